"""HTTP service wrapping the fitting engine and its analyses.

Responses carry the exact file payloads (model JSON, CSV text) so clients can
write them to disk verbatim; all numeric work happens server-side.
"""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, model_validator

from . import formats, runners
from .errors import DerivativesRequiredError, UnknownProblemError

app = FastAPI(
    title="ratfit",
    description="Adaptive barycentric rational approximation service",
    version="0.1.0",
)

Variant = Literal["aaa", "smooth", "budget"]


class SamplePoint(BaseModel):
    z: Tuple[float, float]
    f: Tuple[float, float]
    df: Optional[Tuple[float, float]] = None


class ApproxRequest(BaseModel):
    problem: Optional[str] = None
    samples: Optional[List[SamplePoint]] = None
    variant: Variant = "aaa"
    tol: Optional[float] = Field(default=None, gt=0)
    max_degree: Optional[int] = Field(default=None, ge=2)
    kappa: float = 1.5
    check_support_errors: bool = False

    @model_validator(mode="after")
    def _one_source(self):
        if (self.problem is None) == (self.samples is None):
            raise ValueError("provide exactly one of 'problem' or 'samples'")
        return self


class ApproxResponse(BaseModel):
    status: str
    n: int
    max_err: float
    model_json: str
    trace_csv: str


class PolesRequest(BaseModel):
    model_json: str
    residue_ratio: float = Field(default=1e-10, ge=0)
    distance_ratio: float = Field(default=1e-10, ge=0)


class PolesResponse(BaseModel):
    poles_csv: str
    n_poles: int
    n_zeros: int
    n_doublets: int


class GridErrorRequest(BaseModel):
    model_json: str
    problem: str
    window: Tuple[float, float, float, float]  # re0, re1, im0, im1
    resolution: int = Field(ge=2)


class GridErrorResponse(BaseModel):
    grid_csv: str


class SweepRequest(BaseModel):
    function: Literal["sqrt121", "mix"]
    variants: List[Variant] = ["aaa", "smooth", "budget"]


class SweepResponse(BaseModel):
    sweep_csv: str


class BenchRequest(BaseModel):
    problem: str
    variants: List[Variant] = ["aaa", "smooth", "budget"]
    repetitions: int = Field(default=5, ge=3)


class BenchResponse(BaseModel):
    bench_csv: str
    budget_over_aaa: Optional[float] = None


class ProblemInfo(BaseModel):
    name: str
    points: int
    tol: float
    max_degree: int
    has_derivatives: bool


def _samples_arrays(samples: List[SamplePoint]):
    points = np.array([complex(*p.z) for p in samples])
    values = np.array([complex(*p.f) for p in samples])
    derivatives = None
    if all(p.df is not None for p in samples):
        derivatives = np.array([complex(*p.df) for p in samples])
    return points, values, derivatives


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/problems", response_model=List[ProblemInfo])
def problems_index():
    return runners.problem_infos()


@app.post("/approx", response_model=ApproxResponse)
def approx(req: ApproxRequest):
    try:
        result = runners.approx(
            problem=req.problem,
            samples=_samples_arrays(req.samples) if req.samples is not None else None,
            variant=req.variant,
            tol=req.tol,
            max_degree=req.max_degree,
            kappa=req.kappa,
            check_support_errors=req.check_support_errors,
        )
    except UnknownProblemError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    except DerivativesRequiredError as exc:
        raise HTTPException(
            status_code=400,
            detail={"code": "budget_requires_derivatives", "message": str(exc)},
        ) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return ApproxResponse(
        status=result.status,
        n=result.n,
        max_err=result.max_err,
        model_json=result.model_json,
        trace_csv=result.trace_csv,
    )


@app.post("/poles", response_model=PolesResponse)
def poles(req: PolesRequest):
    try:
        model = formats.model_from_json(req.model_json)
        report, csv_text = runners.poles_table(
            model, residue_ratio=req.residue_ratio, distance_ratio=req.distance_ratio)
    except (ValueError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=f"malformed model: {exc}") from exc
    return PolesResponse(
        poles_csv=csv_text,
        n_poles=len(report.poles),
        n_zeros=len(report.zeros),
        n_doublets=len(report.doublets),
    )


@app.post("/grid-error", response_model=GridErrorResponse)
def grid_error(req: GridErrorRequest):
    try:
        model = formats.model_from_json(req.model_json)
    except (ValueError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=f"malformed model: {exc}") from exc
    try:
        _, csv_text = runners.grid_error(model, req.problem, req.window, req.resolution)
    except UnknownProblemError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return GridErrorResponse(grid_csv=csv_text)


@app.post("/sweep-even", response_model=SweepResponse)
def sweep_even(req: SweepRequest):
    _, csv_text = runners.sweep_even(req.function, tuple(req.variants))
    return SweepResponse(sweep_csv=csv_text)


@app.post("/bench", response_model=BenchResponse)
def bench(req: BenchRequest):
    try:
        _, ratio, csv_text = runners.bench(req.problem, tuple(req.variants),
                                           req.repetitions)
    except UnknownProblemError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    except DerivativesRequiredError as exc:
        raise HTTPException(
            status_code=400,
            detail={"code": "budget_requires_derivatives", "message": str(exc)},
        ) from exc
    return BenchResponse(bench_csv=csv_text, budget_over_aaa=ratio)
