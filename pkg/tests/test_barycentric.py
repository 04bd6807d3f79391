"""Barycentric model behavior: evaluation, derivatives, pole analyses."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratfit.barycentric import (
    BarycentricModel,
    PoleZeroReport,
    SmoothParts,
    detect_froissart,
    polynomial_weights,
)
from ratfit.errors import PoleEvaluationError, ZeroWeightNodeError


def sq_inverse_model():
    # Exact representation of 1/(z-2)^2 on nodes {0, 1, 3}.
    return BarycentricModel(nodes=[0.0, 1.0, 3.0], values=[0.25, 1.0, 1.0],
                            weights=[8.0, -3.0, 1.0])


def simple_pole_model():
    # Exact representation of 1/(z-2) on nodes {0, 1}.
    return BarycentricModel(nodes=[0.0, 1.0], values=[-0.5, -1.0],
                            weights=[2.0, -1.0])


def identity_model():
    # r(z) = z on nodes {0, 1}.
    return BarycentricModel(nodes=[0.0, 1.0], values=[0.0, 1.0],
                            weights=[-1.0, 1.0])


def contour_residue(model, center, radius, n=64):
    """Trapezoid quadrature of (1/2 pi i) * integral of r around a circle."""
    k = np.arange(n)
    w = radius * np.exp(2j * np.pi * k / n)
    vals = model.eval_many(center + w)
    return np.sum(vals * w) / n


class TestEvaluate:
    def test_sq_inverse_closed_form(self):
        model = sq_inverse_model()
        assert abs(model.evaluate(4.0) - 0.25) <= 1e-14

    def test_node_returns_data_exactly(self):
        model = sq_inverse_model()
        assert model.evaluate(1.0) == 1.0

    def test_constant_data_factors(self):
        model = BarycentricModel(nodes=[0.0, 1.0], values=[5.0, 5.0],
                                 weights=[1.0, 1.0])
        assert abs(model.evaluate(0.3) - 5.0) <= 1e-13 * 5.0

    def test_exact_pole_raises(self):
        # d(0) = 1/(0-1) + 1/(0+1) = 0 exactly.
        model = BarycentricModel(nodes=[1.0, -1.0], values=[1.0, -1.0],
                                 weights=[1.0, 1.0])
        with pytest.raises(PoleEvaluationError):
            model.evaluate(0.0)
        arr = model.eval_many([0.0, 2.0])
        assert np.isinf(arr[0].real)

    def test_zero_weight_node_not_short_circuited(self):
        # With w_0 = 0 the node z=0 has no interpolation guarantee; evaluation
        # there uses the remaining terms.
        model = BarycentricModel(nodes=[0.0, 1.0, 2.0], values=[9.0, 1.0, 1.0],
                                 weights=[0.0, 1.0, -1.0])
        got = model.evaluate(0.0)
        assert got != 9.0
        assert abs(got - 1.0) <= 1e-13  # constant 1 from the two live nodes

    def test_near_node_robustness(self):
        model = sq_inverse_model()
        for zj, fj in zip(model.nodes, model.values):
            z = zj * (1 + 2.0 ** -52) + 2.0 ** -53
            assert abs(model.evaluate(z) - fj) <= 1e-10 * abs(fj)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-10, 10).filter(
        lambda x: min(abs(x - c) for c in (0.0, 1.0, 3.0, 2.0)) > 1e-3))
    def test_weight_scaling_invariance(self, z):
        model = sq_inverse_model()
        doubled = BarycentricModel(nodes=model.nodes, values=model.values,
                                   weights=2.0 * model.weights)
        assert model.evaluate(z) == doubled.evaluate(z)


class TestDerivativeAtNode:
    def test_sq_inverse_derivative(self):
        # d/dz (z-2)^-2 = -2 (z-2)^-3; at z=3 that is -2.
        model = sq_inverse_model()
        assert abs(model.derivative_at_node(2) - (-2.0)) <= 1e-12

    def test_constant_data_zero(self):
        model = BarycentricModel(nodes=[0.0, 1.0, 2.0], values=[7.0] * 3,
                                 weights=[1.0, -2.0, 1.0])
        for i in range(3):
            assert model.derivative_at_node(i) == 0.0

    def test_identity_function(self):
        assert identity_model().derivative_at_node(0) == 1.0

    def test_zero_weight_raises(self):
        model = BarycentricModel(nodes=[0.0, 1.0], values=[1.0, 2.0],
                                 weights=[0.0, 1.0])
        with pytest.raises(ZeroWeightNodeError):
            model.derivative_at_node(0)

    @pytest.mark.parametrize("model_fn", [sq_inverse_model, identity_model])
    def test_against_central_difference(self, model_fn):
        model = model_fn()
        for i, (zj, _) in enumerate(zip(model.nodes, model.values)):
            h = 1e-6 * (1 + abs(zj))
            fd = (model.evaluate(zj + h) - model.evaluate(zj - h)) / (2 * h)
            d = model.derivative_at_node(i)
            assert abs(fd - d) <= 1e-5 * max(abs(d), 1.0)


class TestPolynomialWeights:
    def test_two_nodes(self):
        assert np.array_equal(polynomial_weights([0.0, 1.0]), [-1.0, 1.0])

    def test_single_node(self):
        assert np.array_equal(polynomial_weights([4.2]), [1.0])

    def test_four_nodes_hand_product(self):
        w = polynomial_weights([-3.0, -1.0, 1.0, 3.0])
        # 1/((-3+1)(-3-1)(-3-3)) = -1/48
        assert abs(w[0] - (-1.0 / 48.0)) <= 1e-16

    def test_polynomial_reproduction(self):
        nodes = np.array([-2.0, -0.5, 0.3, 1.0, 2.5])
        coeffs = [1.0, -2.0, 0.5, 3.0, -1.0]
        poly = np.polynomial.polynomial.Polynomial(coeffs)
        model = BarycentricModel(nodes=nodes, values=poly(nodes),
                                 weights=polynomial_weights(nodes))
        for x in np.linspace(-3, 3, 41):
            if np.any(x == nodes):
                continue
            assert abs(model.evaluate(x) - poly(x)) <= 1e-11 * max(1, abs(poly(x)))

    def test_duplicate_nodes_rejected(self):
        with pytest.raises(ValueError):
            polynomial_weights([1.0, 1.0])


class TestRealPartEval:
    def make_smooth(self, blend):
        nodes = np.array([0.0, 1.0, 3.0])
        values = np.array([0.25, 1.0, 1.0])
        v_last = np.array([2.0, -1.0, 2.0]) / 3.0
        v_pen = np.array([1.0, 2.0, 0.0]) / np.sqrt(5.0)
        w_un = v_last + 1j * blend * v_pen
        w = w_un / np.linalg.norm(w_un)
        parts = SmoothParts(v_last=v_last.astype(complex),
                            v_penultimate=v_pen.astype(complex),
                            blend=blend, kappa=1.5)
        return BarycentricModel(nodes=nodes, values=values, weights=w,
                                smooth_parts=parts, variant="smooth")

    def test_blend_zero_matches_plain_evaluation(self):
        model = self.make_smooth(0.0)
        for x in np.linspace(-2, 5, 37):
            if np.any(x == model.nodes.real):
                continue
            r = model.evaluate(x)
            assert abs(model.real_part_eval(x) - r.real) <= 1e-13 * max(1, abs(r))
            assert r.imag == pytest.approx(0.0, abs=1e-15)

    def test_matches_real_part_of_evaluation(self):
        model = self.make_smooth(0.37)
        xs = np.linspace(-2, 5, 211)
        xs = xs[~np.isin(xs, model.nodes.real)]
        re_direct = np.array([model.evaluate(x).real for x in xs])
        re_form = model.real_part_eval(xs)
        assert np.max(np.abs(re_direct - re_form)) <= 1e-12

    def test_node_returns_data(self):
        model = self.make_smooth(0.37)
        assert model.real_part_eval(1.0) == 1.0

    def test_requires_smooth_parts(self):
        with pytest.raises(ValueError):
            sq_inverse_model().real_part_eval(0.5)

    def test_vanishing_denominator_pair_raises(self):
        # Both bracketed sums vanish at x=0 for these (deliberately
        # non-orthogonal) direction vectors.
        from ratfit.errors import RealPartPoleError

        u = np.array([1.0, 1.0]) / np.sqrt(2)
        parts = SmoothParts(v_last=u.astype(complex),
                            v_penultimate=u.astype(complex),
                            blend=0.5, kappa=1.5)
        w = (u + 0.5j * u) / np.linalg.norm(u + 0.5j * u)
        model = BarycentricModel(nodes=[-1.0, 1.0], values=[2.0, 2.0],
                                 weights=w, smooth_parts=parts)
        with pytest.raises(RealPartPoleError):
            model.real_part_eval(0.0)


class TestPolesZerosResidues:
    def test_simple_pole_location(self):
        poles = simple_pole_model().poles()
        assert len(poles) == 1
        assert abs(poles[0] - 2.0) <= 1e-10

    def test_simple_pole_residue(self):
        model = simple_pole_model()
        poles = model.poles()
        res = model.residues(poles)
        assert abs(res[0] - 1.0) <= 1e-10

    def test_simple_pole_no_zeros(self):
        assert len(simple_pole_model().zeros()) == 0

    def test_identity_zero(self):
        zeros = identity_model().zeros()
        assert len(zeros) == 1
        assert abs(zeros[0]) <= 1e-12

    def test_sq_inverse_has_no_zeros(self):
        assert len(sq_inverse_model().zeros()) == 0

    def test_constant_model_pole_count_and_residues(self):
        f = 3.5
        nodes = np.array([0.0, 1.0, 2.0, 4.0])
        # Generic weights (nonzero sum keeps the denominator at full degree).
        w = np.array([1.0, -2.0, 3.0, -1.0])
        model = BarycentricModel(nodes=nodes, values=[f] * 4, weights=w)
        poles = model.poles()
        assert len(poles) == len(nodes) - 1
        res = model.residues(poles)
        assert np.max(np.abs(res)) <= 1e-12 * abs(f)

    def test_counts_bounded(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = rng.integers(2, 8)
            model = BarycentricModel(
                nodes=rng.normal(size=n) + 1j * rng.normal(size=n),
                values=rng.normal(size=n),
                weights=rng.normal(size=n),
            )
            assert len(model.poles()) <= n - 1
            assert len(model.zeros()) <= n - 1

    def test_residues_against_contour_quadrature_simple(self):
        model = simple_pole_model()
        poles = model.poles()
        res = model.residues(poles)
        quad = contour_residue(model, poles[0], 1e-3)
        assert abs(quad - res[0]) <= 1e-6 * abs(res[0])

    def test_double_pole_contour_sees_residue_sum(self):
        # The pencil splits the double pole of 1/(z-2)^2 into two nearby
        # numerical poles with huge opposite residues; a radius-1e-3 circle
        # around either encloses both, so the quadrature matches their SUM
        # (which is the true first-order coefficient, 0), not each one.
        model = sq_inverse_model()
        poles = model.poles()
        near = poles[np.abs(poles - 2.0) < 1e-3]
        assert len(near) == 2
        res = model.residues(near)
        assert np.min(np.abs(res)) > 1e3  # individually huge
        quad = contour_residue(model, near[0], 1e-3)
        assert abs(quad - np.sum(res)) <= 1e-6 * np.max(np.abs(res))


class TestFroissartDetection:
    def test_clean_model_empty(self):
        model = simple_pole_model()
        report = model.pole_zero_report()
        assert report.doublets == ()

    def test_synthetic_doublet_flagged(self):
        report = PoleZeroReport(
            poles=np.array([2.0 + 0j, 3.0 + 1e-12j]),
            zeros=np.array([3.0 + 0j]),
            residues=np.array([1.0 + 0j, 1e-14 + 0j]),
            doublets=(),
        )
        pairs = detect_froissart(report, support_diameter=10.0)
        assert pairs == ((1, 0),)

    def test_zero_thresholds_disable(self):
        report = PoleZeroReport(
            poles=np.array([3.0 + 1e-12j]),
            zeros=np.array([3.0 + 0j]),
            residues=np.array([1e-14 + 0j]),
            doublets=(),
        )
        assert detect_froissart(report, 10.0, residue_ratio=0.0,
                                distance_ratio=0.0) == ()


class TestModelValidation:
    def test_duplicate_nodes(self):
        with pytest.raises(ValueError):
            BarycentricModel(nodes=[1.0, 1.0], values=[1.0, 2.0],
                             weights=[1.0, 1.0])

    def test_all_zero_weights(self):
        with pytest.raises(ValueError):
            BarycentricModel(nodes=[0.0, 1.0], values=[1.0, 2.0],
                             weights=[0.0, 0.0])

    def test_zero_weight_indices(self):
        model = BarycentricModel(nodes=[0.0, 1.0, 2.0], values=[1.0, 2.0, 3.0],
                                 weights=[0.0, 1.0, 0.0])
        assert list(model.zero_weight_indices) == [0, 2]

    def test_interpolates_at_live_nodes(self):
        model = BarycentricModel(nodes=[0.0, 1.0, 2.0], values=[1.0, 2.0, 3.0],
                                 weights=[1.0, 1.0, 1.0])
        for zj, fj in zip(model.nodes, model.values):
            assert model.evaluate(zj) == fj

    def test_support_diameter(self):
        model = BarycentricModel(nodes=[0.0, 3.0 + 4.0j], values=[1.0, 2.0],
                                 weights=[1.0, 1.0])
        assert model.support_diameter == 5.0
