"""The adaptive fitting loop shared by the three weight-solving drivers.

One iteration: assemble the divided-difference matrix for the current support
set, solve for weights, measure the worst error over the remaining sample
points, and either stop or promote the worst point into the support set.
The three drivers differ only in the weight solve:

* ``aaa``    -- last right singular vector of the tall Loewner matrix,
* ``smooth`` -- complex blend of the last two right singular vectors,
* ``budget`` -- last right singular vector of the square node matrix whose
  diagonal carries derivative data.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .barycentric import BarycentricModel, SmoothParts
from .errors import DataExhaustedError, DerivativesRequiredError

__all__ = [
    "SampleSet",
    "EngineOptions",
    "WeightSolve",
    "IterationRecord",
    "ConvergenceTrace",
    "initialize_support",
    "build_loewner",
    "build_budget_matrix",
    "solve_weights",
    "greedy_next",
    "run",
    "budget_model",
]

VARIANTS = ("aaa", "smooth", "budget")


@dataclass
class SampleSet:
    """Data points with a (mutable) support/sample partition.

    ``support_order`` lists indices in selection order; everything else is a
    sample point.  Points must be pairwise distinct.
    """

    points: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray | None = None
    support_order: list = field(default_factory=list)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.complex128).ravel()
        self.values = np.asarray(self.values, dtype=np.complex128).ravel()
        if len(self.points) != len(self.values):
            raise ValueError("points and values must align")
        if self.derivatives is not None:
            self.derivatives = np.asarray(self.derivatives, dtype=np.complex128).ravel()
            if len(self.derivatives) != len(self.points):
                raise ValueError("derivatives must align with points")
        if len(np.unique(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")
        self.support_order = list(self.support_order)

    def __len__(self):
        return len(self.points)

    @property
    def n_support(self) -> int:
        return len(self.support_order)

    @property
    def support_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.points), dtype=bool)
        mask[self.support_order] = True
        return mask

    @property
    def sample_indices(self) -> np.ndarray:
        """Non-support indices in ascending order."""
        return np.nonzero(~self.support_mask)[0]


@dataclass
class EngineOptions:
    variant: str = "aaa"
    tol: float = 1e-13
    max_degree: int = 150
    kappa: float = 1.5
    residue_ratio: float = 1e-10
    distance_ratio: float = 1e-10
    check_support_errors: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_degree < 2:
            raise ValueError("max_degree must be at least 2")
        if not np.isfinite(self.kappa):
            raise ValueError("kappa must be finite")


@dataclass(frozen=True)
class WeightSolve:
    """Result of one weight determination."""

    weights: np.ndarray
    sigma_last: float
    sigma_penultimate: float
    used_full_svd: bool
    zero_weight_indices: np.ndarray
    smooth_parts: SmoothParts | None = None


@dataclass(frozen=True)
class IterationRecord:
    n: int
    max_err: float
    argmax_point: complex
    sigma_last: float
    sigma_penultimate: float
    zero_weight_count: int
    elapsed_s: float
    support_error: float | None = None


@dataclass(frozen=True)
class ConvergenceTrace:
    records: tuple
    status: str  # converged | degree_cap | data_exhausted
    warnings: tuple = ()

    def __post_init__(self):
        if self.status not in ("converged", "degree_cap", "data_exhausted"):
            raise ValueError(f"bad status {self.status!r}")


def initialize_support(samples: SampleSet) -> tuple:
    """First two support indices: farthest from the mean, then farthest from that.

    Distance is complex modulus; ties resolve to the lowest index.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 points to initialize")
    if samples.n_support:
        raise ValueError("support already initialized")
    f = samples.values
    first = int(np.argmax(np.abs(f - f.mean())))
    dist = np.abs(f - f[first])
    dist[first] = -1.0
    second = int(np.argmax(dist))
    return first, second


def build_loewner(samples: SampleSet) -> np.ndarray:
    """M x N divided-difference matrix (F_i - f_j)/(Z_i - z_j).

    Rows follow ascending sample index, columns the support selection order.
    """
    if samples.n_support < 1:
        raise ValueError("no support points")
    rows = samples.sample_indices
    if len(rows) < 1:
        raise ValueError("no sample points")
    cols = samples.support_order
    zi = samples.points[rows][:, None]
    fi = samples.values[rows][:, None]
    zj = samples.points[cols][None, :]
    fj = samples.values[cols][None, :]
    return (fi - fj) / (zi - zj)


def build_budget_matrix(samples: SampleSet) -> np.ndarray:
    """N x N matrix over the support: difference quotients off-diagonal, f' on it."""
    if samples.derivatives is None:
        raise DerivativesRequiredError()
    if samples.n_support < 2:
        raise ValueError("budget matrix needs at least 2 support points")
    order = samples.support_order
    z = samples.points[order]
    f = samples.values[order]
    df = samples.derivatives[order]
    dz = z[:, None] - z[None, :]
    np.fill_diagonal(dz, 1.0)
    b = (f[:, None] - f[None, :]) / dz
    np.fill_diagonal(b, df)
    return b


def _normalized_solve(matrix: np.ndarray, options: EngineOptions) -> WeightSolve:
    m, n = matrix.shape
    if options.variant == "smooth" and n < 2:
        raise ValueError("smooth driver needs at least 2 columns")
    if m < n:
        # Wide matrix: work from the full SVD, whose trailing right vectors
        # span the exact nullspace (sample-side residual zero, sigma 0).
        if options.variant == "smooth":
            # Keep blending the last two right vectors so the weights stay
            # complex; with a nullspace of dimension >= 2 both fit exactly.
            # The blend ratio uses the two smallest computed sigmas.
            svd = kernels.svd_full(matrix)
            s = svd.singular_values
            if len(s) >= 2 and s[-2] > 0.0:
                blend = (s[-1] / s[-2]) ** options.kappa
            else:
                blend = 1.0
            v_last = svd.last_vector
            v_pen = svd.penultimate_vector
            w_un = v_last + (1j * blend) * v_pen
            w = w_un / np.linalg.norm(w_un)
            parts = SmoothParts(v_last=v_last, v_penultimate=v_pen,
                                blend=blend, kappa=options.kappa)
        else:
            w = kernels.nullspace_vector(matrix)
            parts = None
        return WeightSolve(
            weights=w,
            sigma_last=0.0,
            sigma_penultimate=0.0,
            used_full_svd=True,
            zero_weight_indices=np.nonzero(w == 0)[0],
            smooth_parts=parts,
        )
    svd = kernels.svd_reduced(matrix)
    s = svd.singular_values
    sigma_last = float(s[-1])
    sigma_penultimate = float(s[-2]) if n >= 2 else float(s[-1])
    if options.variant in ("aaa", "budget"):
        w = svd.last_vector.copy()
        parts = None
    else:
        v_last = svd.last_vector
        v_pen = svd.penultimate_vector
        blend = 0.0 if sigma_penultimate == 0.0 else (sigma_last / sigma_penultimate) ** options.kappa
        w_un = v_last + (1j * blend) * v_pen
        w = w_un / np.linalg.norm(w_un)
        parts = SmoothParts(v_last=v_last, v_penultimate=v_pen,
                            blend=blend, kappa=options.kappa)
    return WeightSolve(
        weights=w,
        sigma_last=sigma_last,
        sigma_penultimate=sigma_penultimate,
        used_full_svd=False,
        zero_weight_indices=np.nonzero(w == 0)[0],
        smooth_parts=parts,
    )


def solve_weights(matrix, options: EngineOptions) -> WeightSolve:
    """Unit-norm barycentric weights for one iteration, per driver."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    if options.variant == "budget" and matrix.shape[0] != matrix.shape[1]:
        raise ValueError("budget driver expects a square matrix")
    return _normalized_solve(matrix, options)


def greedy_next(samples: SampleSet, model: BarycentricModel) -> int:
    """Index of the sample point where |r - f| is largest (lowest index on ties)."""
    rows = samples.sample_indices
    if len(rows) == 0:
        raise DataExhaustedError("no sample points remain")
    r = model.eval_many(samples.points[rows])
    err = np.abs(r - samples.values[rows])
    err = np.where(np.isnan(err), np.inf, err)
    return int(rows[int(np.argmax(err))])


def _build_model(samples: SampleSet, solve: WeightSolve, variant: str) -> BarycentricModel:
    order = samples.support_order
    return BarycentricModel(
        nodes=samples.points[order],
        values=samples.values[order],
        weights=solve.weights,
        smooth_parts=solve.smooth_parts,
        variant=variant,
    )


def run(samples: SampleSet, options: EngineOptions) -> tuple:
    """Run the adaptive loop; returns (model, trace).

    Convergence requires |r - f| < tol at every point carrying information:
    all sample points, plus any support node whose weight vanished (those
    nodes lose the interpolation guarantee).  Each trace record keeps the
    sample-side maximum and the zero-weight support error separately; with
    ``check_support_errors`` set, a warning is appended whenever the latter
    exceeds the tolerance.
    """
    if options.variant == "budget" and samples.derivatives is None:
        raise DerivativesRequiredError()
    state = SampleSet(points=samples.points, values=samples.values,
                      derivatives=samples.derivatives)
    t0 = time.perf_counter()
    first, second = initialize_support(state)
    state.support_order = [first, second]

    # Cauchy and Loewner columns are built once per admitted support point;
    # row selections below reuse them, which keeps the cheap drivers cheap.
    points, values = state.points, state.values
    total = len(state)
    col_cap = min(options.max_degree, total - 1)
    cauchy_buf = np.empty((total, col_cap), dtype=np.complex128)
    loewner_buf = None if options.variant == "budget" else np.empty_like(cauchy_buf)
    in_support = np.zeros(total, dtype=bool)

    def admit(idx: int, col: int):
        in_support[idx] = True
        d = points - points[idx]
        d[idx] = 1.0
        cauchy_buf[:, col] = 1.0 / d
        cauchy_buf[idx, col] = 0.0
        if loewner_buf is not None:
            loewner_buf[:, col] = (values - values[idx]) / d
            loewner_buf[idx, col] = 0.0

    admit(first, 0)
    admit(second, 1)

    records = []
    warnings = []
    model = None
    status = None
    while True:
        n = state.n_support
        rows = np.nonzero(~in_support)[0]
        fj = values[state.support_order]
        if options.variant == "budget":
            matrix = build_budget_matrix(state)
        else:
            matrix = loewner_buf[:, :n][rows]
        solve = solve_weights(matrix, options)
        model = _build_model(state, solve, options.variant)

        wj = solve.weights
        c = cauchy_buf[:, :n]
        with np.errstate(divide="ignore", invalid="ignore"):
            r_all = (c @ (wj * fj)) / (c @ wj)
        err = np.abs(r_all[rows] - values[rows])
        err = np.where(np.isnan(err), np.inf, err)
        k = int(np.argmax(err))
        max_err = float(err[k])
        argmax_idx = int(rows[k])

        support_error = None
        if len(solve.zero_weight_indices):
            # A vanished weight voids the interpolation guarantee at its node,
            # so that node still counts as a location where data must be met.
            dead = np.asarray(state.support_order)[solve.zero_weight_indices]
            r_dead = model.eval_many(state.points[dead])
            support_error = float(np.max(np.abs(r_dead - state.values[dead])))
            if options.check_support_errors and support_error > options.tol:
                warnings.append(
                    f"zero-weight support error {support_error!r} exceeds tol "
                    f"at N={state.n_support}"
                )

        records.append(IterationRecord(
            n=state.n_support,
            max_err=max_err,
            argmax_point=complex(state.points[argmax_idx]),
            sigma_last=solve.sigma_last,
            sigma_penultimate=solve.sigma_penultimate,
            zero_weight_count=int(len(solve.zero_weight_indices)),
            elapsed_s=time.perf_counter() - t0,
            support_error=support_error,
        ))

        decision_err = max_err if support_error is None else max(max_err, support_error)
        if decision_err < options.tol:
            status = "converged"
            break
        if state.n_support >= options.max_degree:
            status = "degree_cap"
            break
        if len(rows) == 1:
            # Promoting the last sample would leave nothing to fit against.
            status = "data_exhausted"
            break
        state.support_order.append(argmax_idx)
        admit(argmax_idx, n)

    return model, ConvergenceTrace(records=tuple(records), status=status,
                                   warnings=tuple(warnings))


def budget_model(nodes, values, derivatives, kappa=1.5) -> tuple:
    """Budget-driver model for a prescribed support set; returns (model, solve)."""
    state = SampleSet(points=nodes, values=values, derivatives=derivatives,
                      support_order=list(range(len(np.atleast_1d(nodes)))))
    options = EngineOptions(variant="budget", kappa=kappa)
    matrix = build_budget_matrix(state)
    solve = solve_weights(matrix, options)
    return _build_model(state, solve, "budget"), solve
