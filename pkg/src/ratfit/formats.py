"""File formats: model/sample JSON and the CSV tables the CLI emits.

All decimal output uses the shortest round-trip representation (Python's
float repr), so parse -> re-emit is byte-identical and model JSON round-trips
bit-exactly for finite doubles.  Grid cells use ``inf`` for evaluation on a
pole of r and ``-inf`` for exact-zero error.
"""

from __future__ import annotations

import json

import numpy as np

from .barycentric import BarycentricModel, PoleZeroReport, SmoothParts

__all__ = [
    "model_to_json",
    "model_from_json",
    "samples_to_json",
    "samples_from_json",
    "trace_to_csv",
    "trace_from_csv",
    "poles_to_csv",
    "poles_from_csv",
    "grid_to_csv",
    "grid_from_csv",
    "sweep_to_csv",
    "sweep_from_csv",
    "bench_to_csv",
    "bench_from_csv",
]

TRACE_HEADER = "iter,N,max_err,argmax_re,argmax_im,sigma_last,sigma_penult,zero_weights,elapsed_s"
POLES_HEADER = "kind,re,im,res_re,res_im,doublet"
GRID_HEADER = "re,im,log10_abs_err"
SWEEP_HEADER = "n,variant,terminal_n,coarse_err,fine_err,real_poles,min_abs_im,doubled_n"
BENCH_HEADER = "variant,median_s,terminal_n"


def _num(x) -> str:
    return repr(float(x))


def _pairs(arr) -> list:
    arr = np.asarray(arr, dtype=np.complex128).ravel()
    return [[float(z.real), float(z.imag)] for z in arr]


def _unpairs(pairs) -> np.ndarray:
    return np.array([complex(p[0], p[1]) for p in pairs], dtype=np.complex128)


# -- model JSON ---------------------------------------------------------------

def model_to_json(model: BarycentricModel) -> str:
    smooth = None
    if model.smooth_parts is not None:
        sp = model.smooth_parts
        smooth = {
            "v_last": _pairs(sp.v_last),
            "v_penultimate": _pairs(sp.v_penultimate),
            "blend": float(sp.blend),
            "kappa": float(sp.kappa),
        }
    doc = {
        "nodes": _pairs(model.nodes),
        "values": _pairs(model.values),
        "weights": _pairs(model.weights),
        "smooth": smooth,
        "variant": model.variant,
    }
    return json.dumps(doc)


def model_from_json(text: str) -> BarycentricModel:
    doc = json.loads(text)
    smooth = None
    if doc.get("smooth") is not None:
        sp = doc["smooth"]
        smooth = SmoothParts(
            v_last=_unpairs(sp["v_last"]),
            v_penultimate=_unpairs(sp["v_penultimate"]),
            blend=float(sp["blend"]),
            kappa=float(sp["kappa"]),
        )
    return BarycentricModel(
        nodes=_unpairs(doc["nodes"]),
        values=_unpairs(doc["values"]),
        weights=_unpairs(doc["weights"]),
        smooth_parts=smooth,
        variant=doc.get("variant", "aaa"),
    )


# -- sample-set JSON ----------------------------------------------------------

def samples_to_json(points, values, derivatives=None) -> str:
    points = np.asarray(points, dtype=np.complex128).ravel()
    values = np.asarray(values, dtype=np.complex128).ravel()
    rows = []
    for i in range(len(points)):
        row = {
            "z": [float(points[i].real), float(points[i].imag)],
            "f": [float(values[i].real), float(values[i].imag)],
        }
        if derivatives is not None:
            d = complex(np.asarray(derivatives).ravel()[i])
            row["df"] = [d.real, d.imag]
        rows.append(row)
    return json.dumps(rows)


def samples_from_json(text: str):
    rows = json.loads(text)
    if not isinstance(rows, list) or not rows:
        raise ValueError("sample file must be a nonempty JSON array")
    points = _unpairs([r["z"] for r in rows])
    values = _unpairs([r["f"] for r in rows])
    derivatives = None
    if all("df" in r for r in rows):
        derivatives = _unpairs([r["df"] for r in rows])
    return points, values, derivatives


# -- trace CSV ----------------------------------------------------------------

def trace_to_csv(trace) -> str:
    lines = [TRACE_HEADER]
    for i, rec in enumerate(trace.records, start=1):
        lines.append(",".join([
            str(i),
            str(rec.n),
            _num(rec.max_err),
            _num(rec.argmax_point.real),
            _num(rec.argmax_point.imag),
            _num(rec.sigma_last),
            _num(rec.sigma_penultimate),
            str(rec.zero_weight_count),
            _num(rec.elapsed_s),
        ]))
    for w in trace.warnings:
        lines.append(f"# warning={w}")
    lines.append(f"# status={trace.status}")
    return "\n".join(lines) + "\n"


def trace_from_csv(text: str):
    """Parse a trace CSV back to (row dicts, status, warnings)."""
    rows, status, warnings = [], None, []
    lines = text.strip().split("\n")
    if lines[0] != TRACE_HEADER:
        raise ValueError("bad trace header")
    keys = TRACE_HEADER.split(",")
    for line in lines[1:]:
        if line.startswith("# warning="):
            warnings.append(line[len("# warning="):])
        elif line.startswith("# status="):
            status = line[len("# status="):]
        else:
            parts = line.split(",")
            row = dict(zip(keys, parts))
            for k in ("iter", "N", "zero_weights"):
                row[k] = int(row[k])
            for k in ("max_err", "argmax_re", "argmax_im", "sigma_last",
                      "sigma_penult", "elapsed_s"):
                row[k] = float(row[k])
            rows.append(row)
    if status is None:
        raise ValueError("trace missing status line")
    return rows, status, warnings


# -- pole/zero table ----------------------------------------------------------

def poles_to_csv(report: PoleZeroReport) -> str:
    doublet_poles = {i for i, _ in report.doublets}
    doublet_zeros = {j for _, j in report.doublets}
    rows = []
    for i, (p, res) in enumerate(zip(report.poles, report.residues)):
        rows.append((float(p.real), float(p.imag), "pole",
                     _num(res.real), _num(res.imag),
                     "true" if i in doublet_poles else "false"))
    for j, z in enumerate(report.zeros):
        rows.append((float(z.real), float(z.imag), "zero", "", "",
                     "true" if j in doublet_zeros else "false"))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    lines = [POLES_HEADER]
    for re_, im_, kind, rr, ri, dbl in rows:
        lines.append(f"{kind},{_num(re_)},{_num(im_)},{rr},{ri},{dbl}")
    return "\n".join(lines) + "\n"


def poles_from_csv(text: str):
    lines = text.strip().split("\n")
    if lines[0] != POLES_HEADER:
        raise ValueError("bad poles header")
    rows = []
    for line in lines[1:]:
        kind, re_, im_, rr, ri, dbl = line.split(",")
        rows.append({
            "kind": kind,
            "re": float(re_),
            "im": float(im_),
            "res_re": float(rr) if rr else None,
            "res_im": float(ri) if ri else None,
            "doublet": dbl == "true",
        })
    return rows


# -- error grid ---------------------------------------------------------------

def grid_to_csv(cells) -> str:
    """Cells: iterable of (re, im, log10err) with +-inf sentinels allowed."""
    lines = [GRID_HEADER]
    for re_, im_, v in cells:
        lines.append(f"{_num(re_)},{_num(im_)},{_num(v)}")
    return "\n".join(lines) + "\n"


def grid_from_csv(text: str):
    lines = text.strip().split("\n")
    if lines[0] != GRID_HEADER:
        raise ValueError("bad grid header")
    return [tuple(float(tok) for tok in line.split(",")) for line in lines[1:]]


# -- even-grid sweep ----------------------------------------------------------

def sweep_to_csv(rows) -> str:
    """Rows: dicts with keys n, variant, terminal_n, coarse_err, fine_err,
    real_poles, min_abs_im, doubled_n (None outside the budget driver)."""
    lines = [SWEEP_HEADER]
    for r in rows:
        doubled = "" if r["doubled_n"] is None else str(int(r["doubled_n"]))
        lines.append(",".join([
            str(int(r["n"])),
            r["variant"],
            str(int(r["terminal_n"])),
            _num(r["coarse_err"]),
            _num(r["fine_err"]),
            str(int(r["real_poles"])),
            _num(r["min_abs_im"]),
            doubled,
        ]))
    return "\n".join(lines) + "\n"


def sweep_from_csv(text: str):
    lines = text.strip().split("\n")
    if lines[0] != SWEEP_HEADER:
        raise ValueError("bad sweep header")
    rows = []
    for line in lines[1:]:
        n, variant, tn, ce, fe, rp, mi, dn = line.split(",")
        rows.append({
            "n": int(n),
            "variant": variant,
            "terminal_n": int(tn),
            "coarse_err": float(ce),
            "fine_err": float(fe),
            "real_poles": int(rp),
            "min_abs_im": float(mi),
            "doubled_n": int(dn) if dn else None,
        })
    return rows


# -- bench table --------------------------------------------------------------

def bench_to_csv(rows, budget_over_aaa=None) -> str:
    lines = [BENCH_HEADER]
    for r in rows:
        lines.append(f"{r['variant']},{_num(r['median_s'])},{int(r['terminal_n'])}")
    if budget_over_aaa is not None:
        lines.append(f"# budget_over_aaa={_num(budget_over_aaa)}")
    return "\n".join(lines) + "\n"


def bench_from_csv(text: str):
    lines = text.strip().split("\n")
    if lines[0] != BENCH_HEADER:
        raise ValueError("bad bench header")
    rows, ratio = [], None
    for line in lines[1:]:
        if line.startswith("# budget_over_aaa="):
            ratio = float(line.split("=", 1)[1])
        else:
            variant, med, tn = line.split(",")
            rows.append({"variant": variant, "median_s": float(med),
                         "terminal_n": int(tn)})
    return rows, ratio
