"""Barycentric rational models and everything computed from them.

A model is the quotient of two partial-fraction sums sharing simple poles at
the support nodes:

    r(z) = sum_j w_j f_j / (z - z_j)  /  sum_j w_j / (z - z_j)

Evaluation, node derivatives, the real-part form of smooth models, poles,
zeros, residues and near-doublet detection all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    PoleEvaluationError,
    RealPartPoleError,
    ZeroWeightNodeError,
)

__all__ = [
    "SmoothParts",
    "PoleZeroReport",
    "BarycentricModel",
    "polynomial_weights",
    "detect_froissart",
]


@dataclass(frozen=True)
class SmoothParts:
    """Decomposition of smooth-driver weights: w = v_last + blend*i*v_penultimate.

    ``blend`` is (sigma_last/sigma_penultimate)**kappa, defined as 0 when the
    penultimate singular value vanishes (the weights are exact already).
    """

    v_last: np.ndarray
    v_penultimate: np.ndarray
    blend: float
    kappa: float

    def __post_init__(self):
        if self.blend < 0:
            raise ValueError("blend must be nonnegative")


@dataclass(frozen=True)
class PoleZeroReport:
    """Poles, zeros, aligned residues, and flagged near-doublet pairs."""

    poles: np.ndarray
    zeros: np.ndarray
    residues: np.ndarray
    doublets: tuple  # of (pole index, zero index) pairs

    def __post_init__(self):
        if len(self.residues) != len(self.poles):
            raise ValueError("residues must align with poles")


class BarycentricModel:
    """Immutable barycentric rational function.

    Nodes must be pairwise distinct and at least one weight nonzero.  Nodes
    with an exactly zero weight are retained (their terms vanish identically)
    so callers can report on them; their interpolation guarantee is void.
    """

    def __init__(self, nodes, values, weights, smooth_parts=None, variant="aaa"):
        nodes = np.asarray(nodes, dtype=np.complex128).ravel()
        values = np.asarray(values, dtype=np.complex128).ravel()
        weights = np.asarray(weights, dtype=np.complex128).ravel()
        if not (len(nodes) == len(values) == len(weights)):
            raise ValueError("nodes, values and weights must have equal length")
        if len(nodes) < 1:
            raise ValueError("need at least one node")
        if len(np.unique(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        for name, arr in (("nodes", nodes), ("values", values), ("weights", weights)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
        if not np.any(weights != 0):
            raise ValueError("at least one weight must be nonzero")
        self.nodes = nodes
        self.values = values
        self.weights = weights
        self.smooth_parts = smooth_parts
        self.variant = variant
        self.nodes.setflags(write=False)
        self.values.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"BarycentricModel(n={len(self)}, variant={self.variant!r})"

    @property
    def zero_weight_indices(self) -> np.ndarray:
        """Indices of nodes whose weight is exactly zero (diagnostic set)."""
        return np.nonzero(self.weights == 0)[0]

    @property
    def support_diameter(self) -> float:
        z = self.nodes
        if len(z) == 1:
            return 0.0
        return float(np.max(np.abs(z[:, None] - z[None, :])))

    # -- evaluation ---------------------------------------------------------

    def eval_many(self, z) -> np.ndarray:
        """Vectorized evaluation; exact pole hits come back as complex inf.

        Points bitwise-equal to a node with nonzero weight return that node's
        data value; zero-weight nodes are not short-circuited.
        """
        z = np.asarray(z, dtype=np.complex128).ravel()
        active = self.weights != 0
        zj = self.nodes[active]
        wj = self.weights[active]
        fj = self.values[active]
        diff = z[:, None] - zj[None, :]
        hit_i, hit_j = np.nonzero(diff == 0)
        if hit_i.size:
            diff[hit_i, hit_j] = 1.0
        c = 1.0 / diff
        num = c @ (wj * fj)
        den = c @ wj
        with np.errstate(divide="ignore", invalid="ignore"):
            r = num / den
        if hit_i.size:
            r[hit_i] = fj[hit_j]
        at_pole = den == 0
        if hit_i.size:
            at_pole[hit_i] = False
        r[at_pole] = complex(np.inf, 0.0)
        return r

    def evaluate(self, z) -> complex:
        """Evaluate at one point; raises PoleEvaluationError on an exact pole."""
        z = complex(z)
        active = self.weights != 0
        hit = (self.nodes == z) & active
        if np.any(hit):
            return complex(self.values[np.nonzero(hit)[0][0]])
        zj = self.nodes[active]
        inv = 1.0 / (z - zj)
        den = np.sum(self.weights[active] * inv)
        if den == 0:
            raise PoleEvaluationError(z)
        num = np.sum(self.weights[active] * self.values[active] * inv)
        return complex(num / den)

    def __call__(self, z):
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            return self.evaluate(z)
        zv = np.asarray(z)
        return self.eval_many(zv).reshape(zv.shape)

    def derivative_at_node(self, i: int) -> complex:
        """First derivative of r at node i: (-1/w_i) sum_{j!=i} w_j (f_i-f_j)/(z_i-z_j)."""
        i = int(i)
        w_i = self.weights[i]
        if w_i == 0:
            raise ZeroWeightNodeError(f"derivative undefined at zero-weight node {i}")
        mask = np.arange(len(self)) != i
        dz = self.nodes[i] - self.nodes[mask]
        terms = self.weights[mask] * (self.values[i] - self.values[mask]) / dz
        return complex(-np.sum(terms) / w_i)

    # -- real-part form of smooth models -------------------------------------

    def real_part_eval(self, x):
        """Real rational form of Re(r) on the real line for smooth models.

        Valid only when nodes and values are real and smooth parts are
        attached.  Returns f_j at nodes (bitwise match).  Accepts a scalar or
        an array of real points.
        """
        if self.smooth_parts is None:
            raise ValueError("model has no smooth decomposition")
        if np.any(self.nodes.imag != 0) or np.any(self.values.imag != 0):
            raise ValueError("real-part form requires real nodes and values")
        scalar = np.isscalar(x) or np.asarray(x).ndim == 0
        xs = np.asarray(x, dtype=np.float64).ravel()
        zj = self.nodes.real
        fj = self.values.real
        u = self.smooth_parts.v_last.real
        p = self.smooth_parts.v_penultimate.real
        b2 = self.smooth_parts.blend ** 2
        diff = xs[:, None] - zj[None, :]
        hit_i, hit_j = np.nonzero(diff == 0)
        if hit_i.size:
            diff[hit_i, hit_j] = 1.0
        c = 1.0 / diff
        s_u = c @ u
        s_fu = c @ (fj * u)
        s_p = c @ p
        s_fp = c @ (fj * p)
        den = s_u * s_u + b2 * (s_p * s_p)
        bad = den == 0
        if hit_i.size:
            bad[hit_i] = False
        if np.any(bad):
            raise RealPartPoleError(xs[np.nonzero(bad)[0][0]])
        with np.errstate(invalid="ignore"):
            out = (s_fu * s_u + b2 * (s_fp * s_p)) / den
        if hit_i.size:
            out[hit_i] = fj[hit_j]
        return float(out[0]) if scalar else out

    # -- pole/zero/residue analysis -------------------------------------------

    def _arrowhead_eigs(self, top_row: np.ndarray) -> np.ndarray:
        n = len(self)
        e = np.zeros((n + 1, n + 1), dtype=np.complex128)
        e[0, 1:] = top_row
        e[1:, 0] = 1.0
        e[1:, 1:] = np.diag(self.nodes)
        b = np.eye(n + 1, dtype=np.complex128)
        b[0, 0] = 0.0
        return kernels.generalized_eigenvalues(e, b)

    def poles(self) -> np.ndarray:
        """Finite poles of r via the arrowhead pencil; at most N-1 of them."""
        return self._arrowhead_eigs(self.weights)

    def zeros(self) -> np.ndarray:
        """Finite zeros of r: same pencil with w_j f_j in the top row."""
        return self._arrowhead_eigs(self.weights * self.values)

    def residues(self, poles) -> np.ndarray:
        """Residues at simple poles, n(t)/d'(t) with d'(t) = -sum w_j/(t-z_j)^2.

        A residue whose denominator underflows (|d'| < 1e-300, a higher-order
        pole) is reported as inf.
        """
        poles = np.asarray(poles, dtype=np.complex128).ravel()
        active = self.weights != 0
        zj = self.nodes[active]
        wj = self.weights[active]
        fj = self.values[active]
        c = 1.0 / (poles[:, None] - zj[None, :])
        num = c @ (wj * fj)
        dprime = -(c * c) @ wj
        res = np.empty_like(num)
        ok = np.abs(dprime) >= 1e-300
        res[ok] = num[ok] / dprime[ok]
        res[~ok] = complex(np.inf, 0.0)
        return res

    def pole_zero_report(self, residue_ratio=1e-10, distance_ratio=1e-10) -> PoleZeroReport:
        poles = self.poles()
        zeros = self.zeros()
        residues = self.residues(poles)
        report = PoleZeroReport(poles=poles, zeros=zeros, residues=residues, doublets=())
        pairs = detect_froissart(report, self.support_diameter,
                                 residue_ratio=residue_ratio,
                                 distance_ratio=distance_ratio)
        return PoleZeroReport(poles=poles, zeros=zeros, residues=residues, doublets=pairs)


def polynomial_weights(nodes) -> np.ndarray:
    """Weights w_j = prod_{k != j} 1/(z_j - z_k) making r the polynomial interpolant."""
    nodes = np.asarray(nodes, dtype=np.complex128).ravel()
    n = len(nodes)
    if n < 1:
        raise ValueError("need at least one node")
    if len(np.unique(nodes)) != n:
        raise ValueError("nodes must be pairwise distinct")
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def detect_froissart(report: PoleZeroReport, support_diameter,
                     residue_ratio=1e-10, distance_ratio=1e-10) -> tuple:
    """Flag (pole, zero) index pairs that form numerical doublets.

    A pole qualifies when its residue is below residue_ratio times the largest
    finite residue and the nearest zero lies within distance_ratio times the
    support diameter.  Zero thresholds disable detection.
    """
    support_diameter = float(support_diameter)
    if support_diameter <= 0:
        raise ValueError("support_diameter must be positive")
    poles, zeros, residues = report.poles, report.zeros, report.residues
    if len(poles) == 0 or len(zeros) == 0:
        return ()
    finite = np.isfinite(residues)
    if not np.any(finite):
        return ()
    max_res = float(np.max(np.abs(residues[finite])))
    pairs = []
    for i, (pole, res) in enumerate(zip(poles, residues)):
        if not np.isfinite(res) or not np.abs(res) < residue_ratio * max_res:
            continue
        dist = np.abs(zeros - pole)
        j = int(np.argmin(dist))
        if dist[j] < distance_ratio * support_diameter:
            pairs.append((i, j))
    return tuple(pairs)
