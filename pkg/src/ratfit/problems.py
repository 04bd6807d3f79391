"""Registry of target functions, grids and derivatives for the experiments.

Every instance carries the sampled data the adaptive drivers consume plus the
underlying evaluator so error maps can be computed on arbitrary windows.  The
gamma and zeta evaluators are implemented here to double precision; their
test oracles live in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.special

from .errors import UnknownProblemError

__all__ = [
    "ProblemInstance",
    "gamma",
    "digamma",
    "zeta",
    "zeta_deriv",
    "make_grid",
    "problem",
    "names",
    "even_grid_instance",
    "EVEN_SWEEP_FUNCTIONS",
]


# -- special functions --------------------------------------------------------

_BERNOULLI_2J = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
    -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138,
    -236364091 / 2730, 8553103 / 6, -23749461029 / 870,
]


def _is_gamma_pole(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def gamma(z):
    """Gamma function; raises on exact nonpositive-integer input.

    Delegates to scipy's cephes-grade evaluator (real-axis accuracy ~1 ulp).
    A hand-rolled Lanczos series was tried first but its ~5e-15 relative
    noise is visible to the 1e-13 fitting experiments on this function.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zv = np.asarray(z, dtype=np.complex128).ravel()
    if np.any(_is_gamma_pole(zv)):
        raise ValueError("gamma pole: nonpositive integer input")
    real = np.all(zv.imag == 0)
    out = scipy.special.gamma(zv.real if real else zv).astype(np.complex128)
    return complex(out[0]) if scalar else out


def digamma(z):
    """Digamma companion for derivative data: d/dz log(gamma)."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zv = np.asarray(z, dtype=np.complex128).ravel()
    if np.any(_is_gamma_pole(zv)):
        raise ValueError("digamma pole: nonpositive integer input")
    real = np.all(zv.imag == 0)
    out = scipy.special.digamma(zv.real if real else zv).astype(np.complex128)
    return complex(out[0]) if scalar else out


_ZETA_K = 64
_ZETA_J = 12


def _zeta_check(zv: np.ndarray):
    if np.any(zv.real < 2.0):
        raise ValueError("zeta implemented for Re z >= 2 only")


def zeta(z):
    """Riemann zeta by direct summation with Euler-Maclaurin tail terms.

    Restricted to Re z >= 2, the only regime the experiments use.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    s = np.asarray(z, dtype=np.complex128).ravel()
    _zeta_check(s)
    k = _ZETA_K
    ns = np.arange(1, k, dtype=np.float64)
    acc = np.sum(ns[None, :] ** (-s[:, None]), axis=1)
    acc = acc + k ** (1.0 - s) / (s - 1.0) + 0.5 * k ** (-s)
    poch = np.ones_like(s)
    for j in range(1, _ZETA_J + 1):
        m = 2 * j - 1
        # Rising factorial s(s+1)...(s+m-1), extended two factors per step.
        poch = poch * (s + (m - 2)) * (s + (m - 1)) if j > 1 else s
        coeff = _BERNOULLI_2J[j - 1] / math.factorial(2 * j)
        acc = acc + coeff * poch * k ** (-s - m)
    return complex(acc[0]) if scalar else acc


def zeta_deriv(z):
    """Derivative of zeta, term-by-term differentiation of the same scheme."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    s = np.asarray(z, dtype=np.complex128).ravel()
    _zeta_check(s)
    k = _ZETA_K
    lnk = math.log(k)
    ns = np.arange(2, k, dtype=np.float64)
    acc = -np.sum(np.log(ns)[None, :] * ns[None, :] ** (-s[:, None]), axis=1)
    acc = acc - lnk * k ** (1.0 - s) / (s - 1.0) - k ** (1.0 - s) / (s - 1.0) ** 2
    acc = acc - 0.5 * lnk * k ** (-s)
    poch = np.ones_like(s)
    harm = np.zeros_like(s)
    for j in range(1, _ZETA_J + 1):
        m = 2 * j - 1
        if j == 1:
            poch = s.copy()
            harm = 1.0 / s
        else:
            poch = poch * (s + (m - 2)) * (s + (m - 1))
            harm = harm + 1.0 / (s + (m - 2)) + 1.0 / (s + (m - 1))
        coeff = _BERNOULLI_2J[j - 1] / math.factorial(2 * j)
        acc = acc + coeff * poch * k ** (-s - m) * (harm - lnk)
    return complex(acc[0]) if scalar else acc


# -- grids --------------------------------------------------------------------

def make_grid(kind, a=None, b=None, n=None):
    """Build one of the experiment grids.

    Kinds: ``equispaced`` (inclusive endpoints, complex endpoints allowed),
    ``geometric`` (positive real endpoints), ``circle`` (n-th roots of unity),
    ``segments`` (n points on each horizontal segment joining -1+-0.01i and
    1+-0.01i, 2n total).
    """
    if kind == "equispaced":
        if n is None or n < 2:
            raise ValueError("equispaced grid needs n >= 2")
        if a == b:
            raise ValueError("endpoints must differ")
        return np.linspace(complex(a), complex(b), int(n))
    if kind == "geometric":
        if n is None or n < 2:
            raise ValueError("geometric grid needs n >= 2")
        fa, fb = float(a), float(b)
        if fa == fb:
            raise ValueError("endpoints must differ")
        if fa <= 0 or fb <= 0:
            raise ValueError("geometric grid needs positive endpoints")
        return np.geomspace(fa, fb, int(n)).astype(np.complex128)
    if kind == "circle":
        if n is None or n < 2:
            raise ValueError("circle grid needs n >= 2")
        angles = 2.0 * np.pi * np.arange(int(n)) / int(n)
        return np.exp(1j * angles)
    if kind == "segments":
        if n is None or n < 2:
            raise ValueError("segment grid needs n >= 2")
        top = np.linspace(-1 + 0.01j, 1 + 0.01j, int(n))
        bottom = np.linspace(-1 - 0.01j, 1 - 0.01j, int(n))
        return np.concatenate([top, bottom])
    raise ValueError(f"unknown grid kind {kind!r}")


def _square_perimeter(center, side, n) -> np.ndarray:
    half = side / 2.0
    corners = [center + complex(-half, -half), center + complex(half, -half),
               center + complex(half, half), center + complex(-half, half)]
    perim = 4.0 * side
    t = perim * np.arange(n) / n
    out = np.empty(n, dtype=np.complex128)
    for k, tk in enumerate(t):
        edge = int(tk // side)
        frac = (tk - edge * side) / side
        a = corners[edge]
        b = corners[(edge + 1) % 4]
        out[k] = a + frac * (b - a)
    return out


# -- problem registry ---------------------------------------------------------

@dataclass(frozen=True)
class ProblemInstance:
    """One experiment: sampled data plus defaults and the underlying evaluator."""

    name: str
    grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray | None
    tol: float
    max_degree: int
    value_fn: object = None
    fine_grid: np.ndarray | None = None
    reference_facts: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values must align")
        if self.derivatives is not None and len(self.derivatives) != len(self.grid):
            raise ValueError("derivatives must align with grid")
        if len(np.unique(self.grid)) != len(self.grid):
            raise ValueError("grid points must be distinct")

    @property
    def has_derivatives(self) -> bool:
        return self.derivatives is not None


def _gamma_value(z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    pole = _is_gamma_pole(z)
    if np.any(~pole):
        out[~pole] = gamma(z[~pole].ravel()).reshape(z[~pole].shape)
    out[pole] = complex(np.inf, 0.0)
    return out


def _gamma_deriv(z):
    return gamma(z) * digamma(z)


def _sign_re(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.sign(z.real).astype(np.complex128)


def _exp_essential(z):
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = np.where(z == 0, 0.0, np.exp(-1.0 / np.where(z == 0, 1.0, z) ** 2))
    return out.astype(np.complex128)


def _exp_essential_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        safe = np.where(z == 0, 1.0, z)
        out = np.where(z == 0, 0.0, _exp_essential(z) * 2.0 / safe ** 3)
    return out.astype(np.complex128)


def _tan_scaled(c):
    def f(z):
        return np.tan(c * np.asarray(z, dtype=np.complex128))
    return f


def _tan_scaled_deriv(c):
    def df(z):
        t = np.tan(c * np.asarray(z, dtype=np.complex128))
        return c * (1.0 + t * t)
    return df


def _ramp(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.maximum(z.real, 0.0).astype(np.complex128)


def _ramp_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return (z.real > 0).astype(np.complex128)


def _absx(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.abs(z.real).astype(np.complex128)


def _absx_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.sign(z.real).astype(np.complex128)


def _sin40(z):
    return np.sin(40.0 * np.asarray(z, dtype=np.complex128))


def _sin40_deriv(z):
    return 40.0 * np.cos(40.0 * np.asarray(z, dtype=np.complex128))


def _sqrt(z):
    return np.sqrt(np.asarray(z, dtype=np.complex128))


def _sqrt_deriv(z):
    return 0.5 / np.sqrt(np.asarray(z, dtype=np.complex128))


def _sinh_ratio(t):
    # t / sinh(t) with the removable singularity at 0 handled by series.
    t = np.asarray(t, dtype=np.complex128)
    small = np.abs(t) < 1e-4
    ts = np.where(small, 1.0, t)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = ts / np.sinh(ts)
    series = 1.0 - t * t / 6.0 + 7.0 * t ** 4 / 360.0
    return np.where(small, series, direct)


def _sinh_ratio_deriv(t):
    t = np.asarray(t, dtype=np.complex128)
    small = np.abs(t) < 1e-4
    ts = np.where(small, 1.0, t)
    with np.errstate(over="ignore", invalid="ignore"):
        sh = np.sinh(ts)
        direct = (sh - ts * np.cosh(ts)) / (sh * sh)
    series = -t / 3.0 + 7.0 * t ** 3 / 90.0
    return np.where(small, series, direct)


def _sinh_bump(z):
    z = np.asarray(z, dtype=np.complex128)
    return _sinh_ratio(10.0 * np.pi * (z * z - 0.36))


def _sinh_bump_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    t = 10.0 * np.pi * (z * z - 0.36)
    return _sinh_ratio_deriv(t) * 20.0 * np.pi * z


def _log_branch4(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.log(2.0 + z ** 4) / (1.0 - 16.0 * z ** 4)


def _log_branch4_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    u = np.log(2.0 + z ** 4)
    v = 1.0 - 16.0 * z ** 4
    return (4.0 * z ** 3 * v / (2.0 + z ** 4) + 64.0 * z ** 3 * u) / (v * v)


def _sqrt_eps(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.sqrt(0.01 + z * z)


def _sqrt_eps_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return z / np.sqrt(0.01 + z * z)


def _sqrt_eps_complex(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.sqrt(0.01 + z * z) + 1j * np.exp(z)


def _sqrt_eps_complex_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return z / np.sqrt(0.01 + z * z) + 1j * np.exp(z)


def _log_disk(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.log(1.1 - z)


def _log_disk_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return -1.0 / (1.1 - z)


def _sqrt121(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.sqrt(1.21 - z * z)


def _sqrt121_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return -z / np.sqrt(1.21 - z * z)


def _mix(z):
    z = np.asarray(z, dtype=np.complex128)
    return _sqrt_eps(z) + np.tanh(5.0 * z) + np.sin(40.0 * z) + _exp_essential(z)


def _mix_deriv(z):
    z = np.asarray(z, dtype=np.complex128)
    return (_sqrt_eps_deriv(z) + 5.0 / np.cosh(5.0 * z) ** 2
            + 40.0 * np.cos(40.0 * z) + _exp_essential_deriv(z))


def _instance(name, grid, value_fn, deriv_fn=None, tol=1e-13, max_degree=150,
              fine_grid=None, facts=None) -> ProblemInstance:
    grid = np.asarray(grid, dtype=np.complex128)
    values = np.asarray(value_fn(grid), dtype=np.complex128)
    derivs = None if deriv_fn is None else np.asarray(deriv_fn(grid), dtype=np.complex128)
    return ProblemInstance(
        name=name, grid=grid, values=values, derivatives=derivs,
        tol=tol, max_degree=max_degree, value_fn=value_fn,
        fine_grid=None if fine_grid is None else np.asarray(fine_grid),
        reference_facts=facts or {},
    )


def _build_gamma():
    return _instance(
        "gamma", make_grid("equispaced", -1.5, 1.5, 100), _gamma_value, _gamma_deriv,
        facts={"terminal_n_aaa": 12, "terminal_n_smooth": 12,
               "step7_real_poles": [-2.00005523139197, -1.0, 0.0],
               "sigma_ratio_head": [1.01, 2260.0]},
    )


def _build_square2circ():
    square = _square_perimeter(complex(-1.5, 0.0), 2.0, 1000)
    circle = 1.5 + make_grid("circle", n=1000)
    grid = np.concatenate([square, circle])
    return _instance(
        "square2circ", grid, _sign_re, lambda z: np.zeros_like(np.asarray(z, dtype=np.complex128)),
        facts={"terminal_n_aaa": 47},
    )


def _build_exp_essential():
    return _instance(
        "exp_essential", make_grid("equispaced", -1.0, 1.0, 800),
        _exp_essential, _exp_essential_deriv, tol=1e-14,
        facts={"terminal_n_aaa": 35, "terminal_n_smooth": 31, "terminal_n_budget": 36},
    )


def _tan_grid():
    return np.concatenate([make_grid("circle", n=1000), make_grid("segments", n=1000)])


def _build_tan256():
    return _instance(
        "tan256", _tan_grid(), _tan_scaled(256.0), _tan_scaled_deriv(256.0),
        max_degree=210, facts={"status": "degree_cap"},
    )


def _build_tan64():
    return _instance("tan64", _tan_grid(), _tan_scaled(64.0), _tan_scaled_deriv(64.0),
                     max_degree=210)


def _build_ramp():
    return _instance("ramp", make_grid("equispaced", -1.0, 1.0, 200), _ramp, _ramp_deriv)


def _build_absx_shift():
    return _instance(
        "absx_shift", make_grid("equispaced", -1.0, 2.0, 1001), _absx, _absx_deriv,
        fine_grid=make_grid("equispaced", -0.01, 0.01, 1000),
    )


def _build_absx_200k():
    return _instance(
        "absx_200k", make_grid("equispaced", -1.0, 1.0, 200000), _absx, _absx_deriv,
        max_degree=27,
    )


def _build_sin40_coarse():
    return _instance(
        "sin40_coarse", make_grid("equispaced", -1.0, 1.0, 90), _sin40, _sin40_deriv,
        fine_grid=make_grid("equispaced", -1.0, 1.0, 2000),
    )


def _build_sin40_n20():
    return _instance("sin40_n20", make_grid("equispaced", -1.0, 1.0, 20), _sin40, _sin40_deriv)


def _build_zeta_line():
    return _instance(
        "zeta_line", make_grid("equispaced", complex(4, -40), complex(4, 40), 100),
        zeta, zeta_deriv, facts={"max_dist_from_one": 0.082},
    )


def _build_sqrt_zolotarev():
    return _instance("sqrt_zolotarev", make_grid("geometric", 0.01, 100.0, 2000),
                     _sqrt, _sqrt_deriv)


def _build_sinh_bump():
    return _instance("sinh_bump", make_grid("equispaced", -1.0, 1.0, 160),
                     _sinh_bump, _sinh_bump_deriv)


def _build_log_branch4():
    return _instance("log_branch4", make_grid("circle", n=1000),
                     _log_branch4, _log_branch4_deriv)


def _build_sqrt_eps():
    return _instance("sqrt_eps", make_grid("equispaced", -1.0, 1.0, 80),
                     _sqrt_eps, _sqrt_eps_deriv)


def _build_sqrt_eps_complex():
    return _instance("sqrt_eps_complex", make_grid("equispaced", -1.0, 1.0, 80),
                     _sqrt_eps_complex, _sqrt_eps_complex_deriv)


def _build_log_disk():
    return _instance("log_disk", make_grid("circle", n=256), _log_disk, _log_disk_deriv)


EVEN_SWEEP_FUNCTIONS = {
    "sqrt121": (_sqrt121, _sqrt121_deriv),
    "mix": (_mix, _mix_deriv),
}


def even_grid_instance(function: str, n: int) -> ProblemInstance:
    """Evenly spaced n-point instance of a sweep function on [-1, 1]."""
    if function not in EVEN_SWEEP_FUNCTIONS:
        raise UnknownProblemError(function, EVEN_SWEEP_FUNCTIONS)
    fn, dfn = EVEN_SWEEP_FUNCTIONS[function]
    return _instance(
        f"{function}_even_{n}", make_grid("equispaced", -1.0, 1.0, n), fn, dfn,
        fine_grid=make_grid("equispaced", -1.0, 1.0, 1000),
    )


def _build_sqrt121_even():
    inst = even_grid_instance("sqrt121", 100)
    return ProblemInstance(
        name="sqrt121_even", grid=inst.grid, values=inst.values,
        derivatives=inst.derivatives, tol=inst.tol, max_degree=inst.max_degree,
        value_fn=inst.value_fn, fine_grid=inst.fine_grid,
        reference_facts={"smooth_real_pole_runs": 0},
    )


def _build_mix_even():
    inst = even_grid_instance("mix", 100)
    return ProblemInstance(
        name="mix_even", grid=inst.grid, values=inst.values,
        derivatives=inst.derivatives, tol=inst.tol, max_degree=inst.max_degree,
        value_fn=inst.value_fn, fine_grid=inst.fine_grid,
        reference_facts={},
    )


_BUILDERS = {
    "gamma": _build_gamma,
    "square2circ": _build_square2circ,
    "exp_essential": _build_exp_essential,
    "tan256": _build_tan256,
    "ramp": _build_ramp,
    "absx_shift": _build_absx_shift,
    "absx_200k": _build_absx_200k,
    "tan64": _build_tan64,
    "sin40_coarse": _build_sin40_coarse,
    "zeta_line": _build_zeta_line,
    "sqrt_zolotarev": _build_sqrt_zolotarev,
    "sinh_bump": _build_sinh_bump,
    "log_branch4": _build_log_branch4,
    "sqrt_eps": _build_sqrt_eps,
    "sqrt_eps_complex": _build_sqrt_eps_complex,
    "log_disk": _build_log_disk,
    "sqrt121_even": _build_sqrt121_even,
    "mix_even": _build_mix_even,
    "sin40_n20": _build_sin40_n20,
}


def names() -> list:
    return sorted(_BUILDERS)


def problem(name: str) -> ProblemInstance:
    """Instantiate a registry problem by name."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownProblemError(name, _BUILDERS) from None
    return builder()
