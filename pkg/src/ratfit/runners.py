"""Operation layer behind the service endpoints.

Each runner resolves its inputs (registry problem or user samples), drives the
engine or the model analyses, and returns both structured results and the
exact file payloads the CLI writes to disk.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import formats, problems
from .barycentric import BarycentricModel
from .engine import EngineOptions, SampleSet, run
from .errors import DerivativesRequiredError

__all__ = [
    "ApproxResult",
    "approx",
    "poles_table",
    "grid_error",
    "sweep_even",
    "bench",
    "problem_infos",
    "SWEEP_GRID_SIZES",
]

SWEEP_GRID_SIZES = tuple(range(8, 201, 4))
FINE_POLE_IM_CUTOFF = 1e-12


@dataclass(frozen=True)
class ApproxResult:
    status: str
    n: int
    max_err: float
    model: BarycentricModel
    trace: object
    model_json: str
    trace_csv: str


def _resolve_samples(problem=None, samples=None):
    """Either a registry problem name or (points, values, derivatives)."""
    if (problem is None) == (samples is None):
        raise ValueError("exactly one of problem/samples must be given")
    if problem is not None:
        inst = problems.problem(problem)
        return inst, SampleSet(points=inst.grid, values=inst.values,
                               derivatives=inst.derivatives)
    points, values, derivatives = samples
    return None, SampleSet(points=points, values=values, derivatives=derivatives)


def approx(problem=None, samples=None, variant="aaa", tol=None, max_degree=None,
           kappa=1.5, check_support_errors=False) -> ApproxResult:
    inst, sample_set = _resolve_samples(problem, samples)
    if variant == "budget" and sample_set.derivatives is None:
        raise DerivativesRequiredError()
    options = EngineOptions(
        variant=variant,
        tol=tol if tol is not None else (inst.tol if inst else 1e-13),
        max_degree=max_degree if max_degree is not None else (inst.max_degree if inst else 150),
        kappa=kappa,
        check_support_errors=check_support_errors,
    )
    model, trace = run(sample_set, options)
    return ApproxResult(
        status=trace.status,
        n=trace.records[-1].n,
        max_err=trace.records[-1].max_err,
        model=model,
        trace=trace,
        model_json=formats.model_to_json(model),
        trace_csv=formats.trace_to_csv(trace),
    )


def poles_table(model: BarycentricModel, residue_ratio=1e-10, distance_ratio=1e-10):
    report = model.pole_zero_report(residue_ratio=residue_ratio,
                                    distance_ratio=distance_ratio)
    return report, formats.poles_to_csv(report)


def grid_error(model: BarycentricModel, problem_name: str, window, resolution: int):
    """Cells of log10 |r - f| on a rectangular lattice over the window.

    Rows iterate imaginary part (outer, ascending) then real part.  A pole of
    r maps to +inf, exact-zero error to -inf.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    re0, re1, im0, im1 = (float(x) for x in window)
    inst = problems.problem(problem_name)
    res = np.linspace(re0, re1, resolution)
    ims = np.linspace(im0, im1, resolution)
    cells = []
    for im in ims:
        zs = res + 1j * im
        rv = model.eval_many(zs)
        fv = np.asarray(inst.value_fn(zs), dtype=np.complex128).ravel()
        with np.errstate(invalid="ignore", over="ignore"):
            err = np.abs(rv - fv)
        pole_hit = ~np.isfinite(rv)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.log10(err)
        logs = np.where(pole_hit, np.inf, logs)
        logs = np.where(np.isnan(logs), np.inf, logs)
        for re_, v in zip(res, logs):
            cells.append((float(re_), float(im), float(v)))
    return cells, formats.grid_to_csv(cells)


def _sweep_one(function: str, variant: str, n: int) -> dict:
    inst = problems.even_grid_instance(function, n)
    sample_set = SampleSet(points=inst.grid, values=inst.values,
                           derivatives=inst.derivatives if variant == "budget" else None)
    model, trace = run(sample_set, EngineOptions(variant=variant, tol=inst.tol,
                                                 max_degree=inst.max_degree))
    fine = inst.fine_grid
    err = np.abs(model.eval_many(fine) - np.asarray(inst.value_fn(fine)).ravel())
    err = np.where(np.isnan(err), np.inf, err)
    poles = model.poles()
    in_band = (poles.real >= -1.0) & (poles.real <= 1.0)
    real_poles = int(np.sum(in_band & (np.abs(poles.imag) < FINE_POLE_IM_CUTOFF)))
    min_abs_im = float(np.min(np.abs(poles[in_band].imag))) if np.any(in_band) else np.inf
    return {
        "n": n,
        "variant": variant,
        "terminal_n": trace.records[-1].n,
        "coarse_err": trace.records[-1].max_err,
        "fine_err": float(np.max(err)),
        "real_poles": real_poles,
        "min_abs_im": min_abs_im,
        "doubled_n": 2 * n if variant == "budget" else None,
    }


def sweep_even(function: str, variants=("aaa", "smooth", "budget")):
    """One engine call per (n, variant) over the even-grid family."""
    if function not in problems.EVEN_SWEEP_FUNCTIONS:
        raise ValueError(f"sweep function must be one of "
                         f"{sorted(problems.EVEN_SWEEP_FUNCTIONS)}, got {function!r}")
    rows = [
        _sweep_one(function, variant, n)
        for n in SWEEP_GRID_SIZES
        for variant in variants
    ]
    return rows, formats.sweep_to_csv(rows)


def bench(problem: str, variants=("aaa", "smooth", "budget"), repetitions=5):
    """Median wall-clock per driver over repeated full runs."""
    if repetitions < 3:
        raise ValueError("repetitions must be at least 3")
    inst = problems.problem(problem)
    rows = []
    for variant in variants:
        if variant == "budget" and inst.derivatives is None:
            raise DerivativesRequiredError()
        times = []
        terminal = None
        for _ in range(repetitions):
            sample_set = SampleSet(points=inst.grid, values=inst.values,
                                   derivatives=inst.derivatives)
            t0 = time.perf_counter()
            _, trace = run(sample_set, EngineOptions(variant=variant, tol=inst.tol,
                                                     max_degree=inst.max_degree))
            times.append(time.perf_counter() - t0)
            terminal = trace.records[-1].n
        rows.append({"variant": variant, "median_s": statistics.median(times),
                     "terminal_n": terminal})
    ratio = None
    by_variant = {r["variant"]: r["median_s"] for r in rows}
    if "budget" in by_variant and "aaa" in by_variant:
        ratio = by_variant["budget"] / by_variant["aaa"]
    return rows, ratio, formats.bench_to_csv(rows, ratio)


def problem_infos():
    out = []
    for name in problems.names():
        inst = problems.problem(name)
        out.append({
            "name": name,
            "points": int(len(inst.grid)),
            "tol": float(inst.tol),
            "max_degree": int(inst.max_degree),
            "has_derivatives": bool(inst.has_derivatives),
        })
    return out
