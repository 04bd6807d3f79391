"""CLI behavior: files written, exit codes, output formats."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from ratfit import formats
from ratfit.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write_samples(path, with_df=True):
    zs = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 3.5, 4.0, 5.0]
    rows = []
    for z in zs:
        row = {"z": [z, 0.0], "f": [1.0 / (z - 2.0), 0.0]}
        if with_df:
            row["df"] = [-1.0 / (z - 2.0) ** 2, 0.0]
        rows.append(row)
    path.write_text(json.dumps(rows))


class TestApprox:
    def test_converged_run_writes_files(self, runner, tmp_path):
        model_path = tmp_path / "m.json"
        trace_path = tmp_path / "t.csv"
        result = runner.invoke(main, [
            "approx", "--problem", "sqrt_eps", "--variant", "aaa",
            "--out-model", str(model_path), "--out-trace", str(trace_path),
        ])
        assert result.exit_code == 0, result.output
        assert result.output.startswith("N=")
        assert "status=converged" in result.output
        model = formats.model_from_json(model_path.read_text())
        assert len(model.nodes) >= 2
        rows, status, _ = formats.trace_from_csv(trace_path.read_text())
        assert status == "converged"

    def test_degree_cap_exit_2(self, runner, tmp_path):
        result = runner.invoke(main, [
            "approx", "--problem", "sin40_n20", "--max-degree", "4",
            "--out-model", str(tmp_path / "m.json"),
            "--out-trace", str(tmp_path / "t.csv"),
        ])
        assert result.exit_code == 2
        assert "status=degree_cap" in result.output

    def test_data_exhausted_exit_3(self, runner, tmp_path):
        samples = tmp_path / "s.json"
        write_samples(samples, with_df=False)
        result = runner.invoke(main, [
            "approx", "--input", str(samples), "--tol", "1e-300",
            "--out-model", str(tmp_path / "m.json"),
            "--out-trace", str(tmp_path / "t.csv"),
        ])
        assert result.exit_code == 3
        assert "status=data_exhausted" in result.output

    def test_budget_without_derivatives_exit_4(self, runner, tmp_path):
        samples = tmp_path / "s.json"
        write_samples(samples, with_df=False)
        result = runner.invoke(main, [
            "approx", "--input", str(samples), "--variant", "budget",
            "--out-model", str(tmp_path / "m.json"),
            "--out-trace", str(tmp_path / "t.csv"),
        ])
        assert result.exit_code == 4
        assert "budget" in result.output

    def test_budget_with_derivatives_ok(self, runner, tmp_path):
        samples = tmp_path / "s.json"
        write_samples(samples, with_df=True)
        result = runner.invoke(main, [
            "approx", "--input", str(samples), "--variant", "budget",
            "--tol", "1e-10",
            "--out-model", str(tmp_path / "m.json"),
            "--out-trace", str(tmp_path / "t.csv"),
        ])
        assert result.exit_code == 0, result.output

    def test_unknown_problem_exit_1(self, runner, tmp_path):
        result = runner.invoke(main, ["approx", "--problem", "nope"])
        assert result.exit_code == 1

    def test_requires_exactly_one_source(self, runner):
        assert runner.invoke(main, ["approx"]).exit_code == 1
        r = runner.invoke(main, ["approx", "--problem", "gamma", "--input", "x.json"])
        assert r.exit_code == 1


class TestPoles:
    def test_simple_pole_table(self, runner, tmp_path):
        samples = tmp_path / "s.json"
        write_samples(samples)
        model_path = tmp_path / "m.json"
        runner.invoke(main, [
            "approx", "--input", str(samples), "--tol", "1e-12",
            "--out-model", str(model_path), "--out-trace", str(tmp_path / "t.csv"),
        ])
        out = tmp_path / "p.csv"
        result = runner.invoke(main, ["poles", str(model_path), "--out", str(out)])
        assert result.exit_code == 0, result.output
        rows = formats.poles_from_csv(out.read_text())
        poles = [complex(r["re"], r["im"]) for r in rows if r["kind"] == "pole"]
        assert min(abs(p - 2.0) for p in poles) <= 1e-8
        res = [complex(r["res_re"], r["res_im"]) for r in rows if r["kind"] == "pole"]
        best = min(zip(poles, res), key=lambda pr: abs(pr[0] - 2.0))
        assert abs(best[1] - 1.0) <= 1e-7

    def test_missing_model_file(self, runner, tmp_path):
        result = runner.invoke(main, ["poles", str(tmp_path / "absent.json")])
        assert result.exit_code == 1

    def test_gamma_seventh_step_pole_table(self, runner, tmp_path):
        # Eight-node gamma fit: the table must pin the poles at 0 and -1 to
        # ten digits and the one near -2.000055 to six.
        model_path = tmp_path / "m.json"
        runner.invoke(main, [
            "approx", "--problem", "gamma", "--variant", "aaa",
            "--max-degree", "8",
            "--out-model", str(model_path), "--out-trace", str(tmp_path / "t.csv"),
        ])
        out = tmp_path / "p.csv"
        result = runner.invoke(main, ["poles", str(model_path), "--out", str(out)])
        assert result.exit_code == 0, result.output
        rows = formats.poles_from_csv(out.read_text())
        poles = [complex(r["re"], r["im"]) for r in rows if r["kind"] == "pole"]
        assert min(abs(p - (-2.00005523139197)) for p in poles) <= 1e-6
        assert min(abs(p - (-1.0)) for p in poles) <= 1e-10
        assert min(abs(p) for p in poles) <= 1e-10


class TestGridError:
    def test_exact_model_grid(self, runner, tmp_path):
        # The 3-node representation of 1/(z-2)^2 against its own registry-free
        # reference is not possible, so check an exact-fit run instead:
        # sqrt_eps fitted to tolerance, errors on a real window stay small.
        model_path = tmp_path / "m.json"
        runner.invoke(main, [
            "approx", "--problem", "sqrt_eps",
            "--out-model", str(model_path), "--out-trace", str(tmp_path / "t.csv"),
        ])
        grid_path = tmp_path / "g.csv"
        result = runner.invoke(main, [
            "grid-error", "--model", str(model_path), "--problem", "sqrt_eps",
            "--window", "-0.9,0.9,-0.05,0.05", "--res", "7",
            "--out-grid", str(grid_path),
        ])
        assert result.exit_code == 0, result.output
        cells = formats.grid_from_csv(grid_path.read_text())
        assert len(cells) == 49
        mid_row = [c for c in cells if c[1] == 0.0]
        assert all(c[2] <= -10 for c in mid_row)

    def test_bad_window(self, runner, tmp_path):
        result = runner.invoke(main, [
            "grid-error", "--model", "x.json", "--problem", "sqrt_eps",
            "--window", "1,2,3", "--res", "3",
        ])
        assert result.exit_code == 1

    def test_round_trip_bytes(self, runner, tmp_path):
        model_path = tmp_path / "m.json"
        runner.invoke(main, [
            "approx", "--problem", "sin40_n20", "--max-degree", "6",
            "--out-model", str(model_path), "--out-trace", str(tmp_path / "t.csv"),
        ])
        grid_path = tmp_path / "g.csv"
        runner.invoke(main, [
            "grid-error", "--model", str(model_path), "--problem", "sin40_n20",
            "--window", "-1,1,-1,1", "--res", "4", "--out-grid", str(grid_path),
        ])
        text = grid_path.read_text()
        assert formats.grid_to_csv(formats.grid_from_csv(text)) == text


class TestBench:
    def test_fast_problem(self, runner, tmp_path):
        out = tmp_path / "b.csv"
        result = runner.invoke(main, [
            "bench", "--problem", "sin40_n20", "--variants", "aaa,budget",
            "--reps", "3", "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        rows, ratio = formats.bench_from_csv(out.read_text())
        assert len(rows) == 2 and ratio is not None

    def test_reps_floor(self, runner):
        result = runner.invoke(main, ["bench", "--problem", "sin40_n20",
                                      "--reps", "2"])
        assert result.exit_code == 1

    def test_bad_variant(self, runner):
        result = runner.invoke(main, ["bench", "--problem", "sin40_n20",
                                      "--variants", "aaa,bogus"])
        assert result.exit_code == 1


class TestListProblems:
    def test_lists_registry(self, runner):
        result = runner.invoke(main, ["list-problems"])
        assert result.exit_code == 0
        assert "gamma" in result.output
        assert "square2circ" in result.output
        assert "derivatives=yes" in result.output
