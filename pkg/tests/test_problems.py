"""Registry contents, grids, and the special-function evaluators."""

import math

import mpmath
import numpy as np
import pytest

from ratfit import problems
from ratfit.errors import UnknownProblemError

mpmath.mp.dps = 30

ALL_NAMES = [
    "gamma", "square2circ", "exp_essential", "tan256", "ramp", "absx_shift",
    "absx_200k", "tan64", "sin40_coarse", "zeta_line", "sqrt_zolotarev",
    "sinh_bump", "log_branch4", "sqrt_eps", "sqrt_eps_complex", "log_disk",
    "sqrt121_even", "mix_even", "sin40_n20",
]

# Real-axis points within this distance of a kink are skipped by the
# finite-difference derivative check.
KINKS = {
    "ramp": [0.0], "absx_shift": [0.0], "absx_200k": [0.0],
    "exp_essential": [0.0], "mix_even": [0.0],
}

# Local scale for the finite-difference step: the oscillation length for the
# scaled-argument tangents, otherwise unit.
FD_SCALE = {"tan256": 1.0 / 256.0, "tan64": 1.0 / 64.0}


class TestGamma:
    def test_known_values(self):
        assert abs(problems.gamma(1.0) - 1.0) <= 1e-14
        assert abs(problems.gamma(0.5) - math.sqrt(math.pi)) <= 1e-14
        assert abs(problems.gamma(-0.5) + 2 * math.sqrt(math.pi)) <= 1e-13

    def test_recurrence_on_interval(self):
        z = np.linspace(0.1, 1.5, 50)
        lhs = problems.gamma(z + 1)
        rhs = z * problems.gamma(z)
        assert np.max(np.abs(lhs - rhs) / np.abs(lhs)) <= 1e-12

    def test_pole_raises(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(ValueError):
                problems.gamma(z)

    def test_accuracy_against_mpmath(self):
        inst = problems.problem("gamma")
        sample = inst.grid[::7]
        ref = np.array([complex(mpmath.gamma(complex(z))) for z in sample])
        got = problems.gamma(sample)
        assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-13

    def test_digamma_against_mpmath(self):
        pts = np.array([0.3, 1.2, -0.7, 2.5])
        ref = np.array([complex(mpmath.digamma(complex(z))) for z in pts])
        got = problems.digamma(pts)
        assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-12


class TestZeta:
    def test_known_values(self):
        assert abs(problems.zeta(4.0) - math.pi**4 / 90) <= 1e-14
        assert abs(problems.zeta(2.0) - math.pi**2 / 6) <= 1e-14

    def test_segment_accuracy_against_mpmath(self):
        inst = problems.problem("zeta_line")
        sample = inst.grid[::9]
        ref = np.array([complex(mpmath.zeta(complex(z))) for z in sample])
        got = problems.zeta(sample)
        assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-13

    def test_derivative_against_mpmath(self):
        inst = problems.problem("zeta_line")
        sample = inst.grid[::9]
        ref = np.array([complex(mpmath.zeta(complex(z), derivative=1)) for z in sample])
        got = problems.zeta_deriv(sample)
        assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-13

    def test_near_constant_on_segment(self):
        inst = problems.problem("zeta_line")
        assert np.max(np.abs(1.0 - inst.values)) < 0.082

    def test_domain_restriction(self):
        with pytest.raises(ValueError):
            problems.zeta(1.5)


class TestMakeGrid:
    def test_equispaced(self):
        g = problems.make_grid("equispaced", -1.0, 1.0, n=3)
        assert np.array_equal(g, np.array([-1.0, 0.0, 1.0], dtype=complex))

    def test_geometric(self):
        g = problems.make_grid("geometric", 0.01, 100.0, n=3)
        assert np.allclose(g, [0.01, 1.0, 100.0])
        assert g[0] == 0.01 and g[-1] == 100.0

    def test_circle_quarters(self):
        g = problems.make_grid("circle", n=4)
        assert np.allclose(g, [1, 1j, -1, -1j], atol=1e-15)

    def test_segments(self):
        g = problems.make_grid("segments", n=5)
        assert len(g) == 10
        assert np.all(np.abs(g.imag) == 0.01)
        assert len(np.unique(g)) == 10

    def test_complex_endpoints(self):
        g = problems.make_grid("equispaced", complex(4, -40), complex(4, 40), n=5)
        assert g[0] == 4 - 40j and g[-1] == 4 + 40j

    def test_errors(self):
        with pytest.raises(ValueError):
            problems.make_grid("equispaced", 0.0, 1.0, n=1)
        with pytest.raises(ValueError):
            problems.make_grid("equispaced", 1.0, 1.0, n=5)
        with pytest.raises(ValueError):
            problems.make_grid("geometric", -1.0, 1.0, n=5)
        with pytest.raises(ValueError):
            problems.make_grid("bogus", 0.0, 1.0, n=5)


class TestRegistry:
    def test_names_complete(self):
        assert problems.names() == sorted(ALL_NAMES)

    def test_unknown_name(self):
        with pytest.raises(UnknownProblemError):
            problems.problem("not_a_problem")

    @pytest.mark.parametrize("name", [n for n in ALL_NAMES if n != "absx_200k"])
    def test_instances_well_formed(self, name):
        inst = problems.problem(name)
        assert len(inst.grid) == len(inst.values)
        assert len(np.unique(inst.grid)) == len(inst.grid)
        assert np.all(np.isfinite(inst.values))
        if inst.derivatives is not None:
            assert len(inst.derivatives) == len(inst.grid)
            assert np.all(np.isfinite(inst.derivatives))
        assert inst.tol > 0 and inst.max_degree >= 2

    def test_ramp_grid_and_derivative(self):
        inst = problems.problem("ramp")
        assert len(inst.grid) == 200
        assert inst.grid[0] == -1.0 and inst.grid[-1] == 1.0
        assert not np.any(inst.grid == 0.0)
        pos = inst.grid.real > 0
        assert np.all(inst.derivatives[pos] == 1.0)
        assert np.all(inst.derivatives[~pos] == 0.0)

    def test_square2circ_layout(self):
        inst = problems.problem("square2circ")
        assert len(inst.grid) == 2000
        square, circle = inst.grid[:1000], inst.grid[1000:]
        assert np.all(inst.values[:1000] == -1.0)
        assert np.all(inst.values[1000:] == 1.0)
        assert np.max(np.abs(np.abs(circle - 1.5) - 1.0)) <= 1e-12
        assert np.max(square.real) <= -0.5 and np.min(square.real) >= -2.5
        assert np.max(np.abs(square.imag)) <= 1.0

    def test_absx_shift_grid(self):
        inst = problems.problem("absx_shift")
        assert len(inst.grid) == 1001
        assert inst.grid[0] == -1.0 and inst.grid[-1] == 2.0
        assert not np.any(inst.grid == 0.0)
        assert inst.fine_grid is not None and len(inst.fine_grid) == 1000

    def test_absx_200k_shape(self):
        inst = problems.problem("absx_200k")
        assert len(inst.grid) == 200000
        assert inst.max_degree == 27
        assert not np.any(inst.grid == 0.0)

    def test_tan_grids(self):
        for name in ("tan256", "tan64"):
            inst = problems.problem(name)
            assert len(inst.grid) == 3000
            on_circle = np.abs(np.abs(inst.grid) - 1.0) <= 1e-12
            assert np.sum(on_circle) >= 1000
        assert problems.problem("tan256").max_degree == 210

    def test_exp_essential_defaults(self):
        inst = problems.problem("exp_essential")
        assert len(inst.grid) == 800
        assert inst.tol == 1e-14
        assert not np.any(inst.grid == 0.0)

    def test_sin40_fine_grid(self):
        inst = problems.problem("sin40_coarse")
        assert len(inst.grid) == 90
        assert len(inst.fine_grid) == 2000

    def test_zeta_line_segment(self):
        inst = problems.problem("zeta_line")
        assert len(inst.grid) == 100
        assert inst.grid[0] == 4 - 40j and inst.grid[-1] == 4 + 40j

    def test_sqrt_zolotarev_geometric(self):
        inst = problems.problem("sqrt_zolotarev")
        assert len(inst.grid) == 2000
        assert inst.grid[0].real == pytest.approx(0.01)
        assert inst.grid[-1].real == pytest.approx(100.0)
        ratios = (inst.grid[1:] / inst.grid[:-1]).real
        assert np.max(ratios) - np.min(ratios) <= 1e-10

    def test_even_grid_instances(self):
        inst = problems.even_grid_instance("sqrt121", 8)
        assert len(inst.grid) == 8
        assert len(inst.fine_grid) == 1000
        with pytest.raises(UnknownProblemError):
            problems.even_grid_instance("nope", 8)

    def test_exp_essential_defines_zero_at_origin(self):
        inst = problems.problem("exp_essential")
        assert inst.value_fn(np.array([0.0]))[0] == 0.0


class TestDerivativeConsistency:
    @pytest.mark.parametrize("name", [
        n for n in ALL_NAMES
        if n not in ("absx_200k", "square2circ")
        and problems.problem(n).derivatives is not None
    ])
    def test_matches_central_difference(self, name):
        inst = problems.problem(name)
        grid = inst.grid
        interior = grid[2:-2]
        kinks = KINKS.get(name, [])
        keep = np.ones(len(interior), dtype=bool)
        for k in kinks:
            keep &= np.abs(interior - k) > 0.05
        pts = interior[keep]
        pts = pts[:: max(1, len(pts) // 25)][:25]
        fn = inst.value_fn
        dfn_vals = {z: d for z, d in zip(grid, inst.derivatives)}
        scale = FD_SCALE.get(name, 1.0)
        for z in pts:
            h = 1e-6 * (1.0 + abs(z)) * scale
            fd = (fn(np.array([z + h]))[0] - fn(np.array([z - h]))[0]) / (2 * h)
            df = dfn_vals[z]
            assert abs(fd - df) <= 1e-7 * max(abs(df), 1.0), (name, z)

    def test_square2circ_derivative_is_zero(self):
        inst = problems.problem("square2circ")
        assert not inst.derivatives.any()


class TestZetaLineDiagnostic:
    def test_pole_and_zero_tracking_reported(self):
        # Diagnostic only: how well the terminal fit tracks the pole at 1 and
        # the first zero up the critical line.  Reported, not asserted against
        # a target (none exists).
        from ratfit.engine import EngineOptions, SampleSet, run

        inst = problems.problem("zeta_line")
        model, trace = run(SampleSet(points=inst.grid, values=inst.values),
                           EngineOptions(variant="aaa", tol=inst.tol,
                                         max_degree=inst.max_degree))
        metric = (1.0 / abs(model.evaluate(1.0))
                  + abs(model.evaluate(0.5 + 14.134725141734694j)))
        print(f"zeta_line terminal N={trace.records[-1].n} "
              f"pole/zero diagnostic 1/|r(1)|+|r(0.5+14.13i)| = {metric:.3e}")
        assert np.isfinite(metric) and metric >= 0.0
