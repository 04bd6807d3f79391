"""Command-line client for the fitting service.

By default the CLI drives the service in-process (no network); pass
``--server URL`` to talk to a running instance instead.  File payloads
returned by the service are written to disk verbatim.

Exit codes: 0 converged, 2 degree cap reached, 3 data exhausted,
4 budget driver without derivative data, 1 usage or input errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

# Degree-cap exits use code 2, so usage errors must not collide with it.
click.UsageError.exit_code = 1

EXIT_BY_STATUS = {"converged": 0, "degree_cap": 2, "data_exhausted": 3}
EXIT_BUDGET_NEEDS_DERIVATIVES = 4


class ServiceClient:
    """Minimal POST/GET wrapper over in-process or remote transport."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DeprecationWarning)
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def get(self, path):
        r = self._client.get(path)
        return r.status_code, r.json()

    def post(self, path, payload):
        r = self._client.post(path, json=payload)
        return r.status_code, r.json()


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _handle_error(status_code: int, body):
    detail = body.get("detail", body)
    if isinstance(detail, dict) and detail.get("code") == "budget_requires_derivatives":
        _fail("input has no 'df' entries but --variant budget needs derivatives",
              EXIT_BUDGET_NEEDS_DERIVATIVES)
    _fail(f"{detail}")


def _load_samples(path: str):
    try:
        rows = json.loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read input file: {exc}")
    except json.JSONDecodeError as exc:
        _fail(f"input file is not valid JSON: {exc}")
    if not isinstance(rows, list):
        _fail("input file must hold a JSON array of sample objects")
    return rows


server_option = click.option("--server", default=None, metavar="URL",
                             help="Remote service URL (default: run in-process).")


@click.group()
def main():
    """Barycentric rational fitting with aaa, smooth, and budget drivers."""


@main.command()
@click.option("--problem", default=None, help="Registry problem name.")
@click.option("--input", "input_path", default=None, type=click.Path(),
              help="Sample-set JSON file (alternative to --problem).")
@click.option("--variant", type=click.Choice(["aaa", "smooth", "budget"]), default="aaa")
@click.option("--tol", type=float, default=None, help="Convergence tolerance.")
@click.option("--max-degree", type=int, default=None, help="Support-point cap.")
@click.option("--kappa", type=float, default=1.5, help="Smooth blend exponent.")
@click.option("--check-support-errors", is_flag=True, default=False,
              help="Warn when a zero-weight support node misses the tolerance.")
@click.option("--out-model", default="model.json", type=click.Path(), show_default=True)
@click.option("--out-trace", default="trace.csv", type=click.Path(), show_default=True)
@server_option
def approx(problem, input_path, variant, tol, max_degree, kappa,
           check_support_errors, out_model, out_trace, server):
    """Fit one model and write it with its convergence trace."""
    if (problem is None) == (input_path is None):
        _fail("give exactly one of --problem or --input")
    payload = {
        "variant": variant,
        "kappa": kappa,
        "check_support_errors": check_support_errors,
    }
    if tol is not None:
        payload["tol"] = tol
    if max_degree is not None:
        payload["max_degree"] = max_degree
    if problem is not None:
        payload["problem"] = problem
    else:
        payload["samples"] = _load_samples(input_path)
    code, body = ServiceClient(server).post("/approx", payload)
    if code != 200:
        _handle_error(code, body)
    Path(out_model).write_text(body["model_json"])
    Path(out_trace).write_text(body["trace_csv"])
    click.echo(f"N={body['n']} max_err={body['max_err']!r} status={body['status']}")
    sys.exit(EXIT_BY_STATUS[body["status"]])


@main.command()
@click.argument("model_path", type=click.Path())
@click.option("--out", default="poles.csv", type=click.Path(), show_default=True)
@server_option
def poles(model_path, out, server):
    """Pole/zero/residue table (with doublet flags) for a model file."""
    try:
        model_json = Path(model_path).read_text()
    except OSError as exc:
        _fail(f"cannot read model file: {exc}")
    code, body = ServiceClient(server).post("/poles", {"model_json": model_json})
    if code != 200:
        _handle_error(code, body)
    Path(out).write_text(body["poles_csv"])
    click.echo(f"poles={body['n_poles']} zeros={body['n_zeros']} "
               f"doublets={body['n_doublets']}")


@main.command("grid-error")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--problem", required=True, help="Registry problem for reference values.")
@click.option("--window", required=True, metavar="RE0,RE1,IM0,IM1",
              help="Rectangle to sample.")
@click.option("--res", default=100, show_default=True, type=int)
@click.option("--out-grid", default="grid.csv", type=click.Path(), show_default=True)
@server_option
def grid_error(model_path, problem, window, res, out_grid, server):
    """log10 |r - f| over a rectangular lattice, as CSV."""
    try:
        parts = [float(tok) for tok in window.split(",")]
    except ValueError:
        parts = []
    if len(parts) != 4:
        _fail("--window needs four comma-separated numbers re0,re1,im0,im1")
    try:
        model_json = Path(model_path).read_text()
    except OSError as exc:
        _fail(f"cannot read model file: {exc}")
    payload = {"model_json": model_json, "problem": problem,
               "window": parts, "resolution": res}
    code, body = ServiceClient(server).post("/grid-error", payload)
    if code != 200:
        _handle_error(code, body)
    Path(out_grid).write_text(body["grid_csv"])
    click.echo(f"wrote {res}x{res} grid to {out_grid}")


@main.command("sweep-even")
@click.option("--function", type=click.Choice(["sqrt121", "mix"]), required=True)
@click.option("--variants", default="aaa,smooth,budget", show_default=True,
              help="Comma-separated driver list.")
@click.option("--out", default="sweep.csv", type=click.Path(), show_default=True)
@server_option
def sweep_even(function, variants, out, server):
    """Fit every even-grid size n = 8,12,...,200 and tabulate the outcomes."""
    variant_list = [v.strip() for v in variants.split(",") if v.strip()]
    bad = [v for v in variant_list if v not in ("aaa", "smooth", "budget")]
    if bad or not variant_list:
        _fail(f"bad --variants entry: {','.join(bad) or '(empty)'}")
    payload = {"function": function, "variants": variant_list}
    code, body = ServiceClient(server).post("/sweep-even", payload)
    if code != 200:
        _handle_error(code, body)
    Path(out).write_text(body["sweep_csv"])
    click.echo(f"wrote sweep table to {out}")


@main.command()
@click.option("--problem", required=True)
@click.option("--variants", default="aaa,smooth,budget", show_default=True)
@click.option("--reps", default=5, show_default=True, type=int)
@click.option("--out", default="bench.csv", type=click.Path(), show_default=True)
@server_option
def bench(problem, variants, reps, out, server):
    """Median wall-clock time per driver over repeated runs."""
    if reps < 3:
        _fail("--reps must be at least 3")
    variant_list = [v.strip() for v in variants.split(",") if v.strip()]
    bad = [v for v in variant_list if v not in ("aaa", "smooth", "budget")]
    if bad or not variant_list:
        _fail(f"bad --variants entry: {','.join(bad) or '(empty)'}")
    payload = {"problem": problem, "variants": variant_list, "repetitions": reps}
    code, body = ServiceClient(server).post("/bench", payload)
    if code != 200:
        _handle_error(code, body)
    Path(out).write_text(body["bench_csv"])
    ratio = body.get("budget_over_aaa")
    suffix = "" if ratio is None else f" budget/aaa={ratio:.3g}"
    click.echo(f"wrote bench table to {out}{suffix}")


@main.command("list-problems")
@server_option
def list_problems(server):
    """List registry problems with sizes and defaults."""
    code, body = ServiceClient(server).get("/problems")
    if code != 200:
        _handle_error(code, body)
    for info in body:
        click.echo(f"{info['name']:18s} points={info['points']:<7d} "
                   f"tol={info['tol']:g} max_degree={info['max_degree']} "
                   f"derivatives={'yes' if info['has_derivatives'] else 'no'}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
