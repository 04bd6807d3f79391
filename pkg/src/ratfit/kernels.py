"""Dense complex linear-algebra kernels with a deterministic phase convention.

All routines are pure functions of their inputs.  Decompositions delegate to
LAPACK (via numpy/scipy) and then enforce the conventions the rest of the
package relies on: singular values descending, right singular vectors
phase-normalized so the largest-modulus entry (lowest index on ties) is real
and positive, and generalized eigenvalues with the structurally infinite ones
filtered out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = ["SvdResult", "svd_reduced", "nullspace_vector", "generalized_eigenvalues"]

# Relative cutoff below which a pencil beta-component counts as zero, and the
# magnitude guard past which an eigenvalue counts as infinite.
BETA_CUTOFF = 1e-13
MAGNITUDE_GUARD = 1e13


@dataclass(frozen=True)
class SvdResult:
    """Right-sided reduced SVD: descending singular values and V columns."""

    singular_values: np.ndarray  # (k,) float64, descending, >= 0
    right_vectors: np.ndarray    # (n, k) complex128, orthonormal columns

    @property
    def last_vector(self) -> np.ndarray:
        return self.right_vectors[:, -1]

    @property
    def penultimate_vector(self) -> np.ndarray:
        return self.right_vectors[:, -2]


def _as_matrix(a, name="matrix") -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be 2-d and nonempty, got shape {a.shape}")
    a = a.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} entries must be finite")
    return a


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Rotate a complex vector so its largest-modulus entry is real positive.

    Ties pick the lowest index.  The pivot entry is set to its modulus exactly
    so the convention is bit-reproducible.
    """
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if pivot == 0:
        return v
    out = v * (np.abs(pivot) / pivot)
    out[k] = np.abs(pivot)
    return out


def _phase_normalize_columns(v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=np.complex128)
    cols = np.arange(out.shape[1])
    piv = np.argmax(np.abs(out), axis=0)  # first max per column
    pivots = out[piv, cols]
    nonzero = pivots != 0
    factors = np.ones_like(pivots)
    factors[nonzero] = np.abs(pivots[nonzero]) / pivots[nonzero]
    out *= factors[None, :]
    out[piv[nonzero], cols[nonzero]] = np.abs(pivots[nonzero])
    return out


def _sign_normalize_columns(v: np.ndarray) -> np.ndarray:
    # Real specialization of the phase convention: flip columns whose pivot
    # entry is negative.  Keeps imaginary parts exactly zero for real input.
    out = np.array(v, dtype=np.float64)
    piv = np.argmax(np.abs(out), axis=0)
    neg = out[piv, np.arange(out.shape[1])] < 0
    out[:, neg] = -out[:, neg]
    return out


def svd_reduced(a) -> SvdResult:
    """Reduced SVD of a tall-or-square matrix, returning only sigma and V.

    Requires rows >= cols.  Real-valued input takes the real LAPACK path so
    the returned vectors have exactly zero imaginary part.
    """
    a = _as_matrix(a)
    m, n = a.shape
    if m < n:
        raise ValueError(f"svd_reduced requires rows >= cols, got {m}x{n}")
    if np.all(a.imag == 0.0):
        _, s, vt = np.linalg.svd(a.real, full_matrices=False)
        v = _sign_normalize_columns(vt.T).astype(np.complex128)
    else:
        _, s, vt = np.linalg.svd(a, full_matrices=False)
        v = _phase_normalize_columns(vt.conj().T)
    return SvdResult(singular_values=s, right_vectors=v)


def svd_full(a) -> SvdResult:
    """Full SVD of a wide matrix: all ``cols`` right vectors, ``rows`` sigmas.

    Right vectors beyond the row count span the exact nullspace.  Phase
    convention as in svd_reduced.  An all-zero matrix maps to the identity V.
    """
    a = _as_matrix(a)
    m, n = a.shape
    if m >= n:
        raise ValueError(f"svd_full is for wide matrices, got {m}x{n}")
    if not a.any():
        return SvdResult(singular_values=np.zeros(m),
                         right_vectors=np.eye(n, dtype=np.complex128))
    if np.all(a.imag == 0.0):
        _, s, vt = np.linalg.svd(a.real, full_matrices=True)
        v = _sign_normalize_columns(vt.T).astype(np.complex128)
    else:
        _, s, vt = np.linalg.svd(a, full_matrices=True)
        v = _phase_normalize_columns(vt.conj().T)
    return SvdResult(singular_values=s, right_vectors=v)


def nullspace_vector(a) -> np.ndarray:
    """Right singular vector of the smallest singular value of a wide matrix.

    Uses the full (not reduced) SVD so the vector spans the exact nullspace
    when rows < cols.  Unit 2-norm, phase convention applied.
    """
    a = _as_matrix(a)
    m, n = a.shape
    if m >= n:
        raise ValueError(f"nullspace_vector requires rows < cols, got {m}x{n}")
    if not a.any():
        # Degenerate zero matrix: every unit vector qualifies; pick the last
        # standard basis vector (already phase-normalized).
        v = np.zeros(n, dtype=np.complex128)
        v[-1] = 1.0
        return v
    if np.all(a.imag == 0.0):
        _, _, vt = np.linalg.svd(a.real, full_matrices=True)
        col = vt.T[:, -1]
        k = int(np.argmax(np.abs(col)))
        if col[k] < 0:
            col = -col
        return col.astype(np.complex128)
    _, _, vt = np.linalg.svd(a, full_matrices=True)
    return _phase_normalize(vt.conj().T[:, -1])


def generalized_eigenvalues(a, b) -> np.ndarray:
    """Finite eigenvalues of the pencil (a, b), sorted by real then imag part.

    Eigenvalues whose beta component falls below BETA_CUTOFF relative to the
    scale of ``b``, or whose magnitude exceeds MAGNITUDE_GUARD times the
    scale ratio of the pencil, are classified as infinite and dropped.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise ValueError("pencil matrices must be square")
    if a.shape != b.shape:
        raise ValueError(f"pencil shape mismatch: {a.shape} vs {b.shape}")
    ab = scipy.linalg.eig(a, b, right=False, homogeneous_eigvals=True)
    alpha, beta = ab[0], ab[1]
    scale_a = float(np.max(np.abs(a)))
    scale_b = float(np.max(np.abs(b)))
    if scale_b == 0.0:
        return np.empty(0, dtype=np.complex128)
    finite = np.abs(beta) > BETA_CUTOFF * scale_b
    lam = alpha[finite] / beta[finite]
    if scale_a > 0.0:
        lam = lam[np.abs(lam) <= MAGNITUDE_GUARD * (scale_a / scale_b)]
    order = np.lexsort((lam.imag, lam.real))
    return lam[order]
