"""Dense linear algebra kernels for small square systems.

Everything operates on float64 numpy arrays. Solves go through a
partial-pivoted LU factorization; an explicit inverse is only formed by
:func:`invert`, for callers whose state *is* an inverse.
"""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import LengthMismatchError, SingularMatrixError

# Relative pivot threshold below which a matrix is treated as singular.
PIVOT_RTOL = 1e-12


def _factor(a):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise LengthMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise SingularMatrixError("matrix contains NaN or Inf entries")
    scale = np.abs(a).max()
    if scale == 0.0:
        raise SingularMatrixError("zero matrix is singular")
    with warnings.catch_warnings():
        # singularity is detected by the pivot check below
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    if np.abs(np.diag(lu)).min() <= PIVOT_RTOL * scale:
        raise SingularMatrixError(
            f"pivot below {PIVOT_RTOL:g} times matrix scale {scale:g}"
        )
    return lu, piv


def solve(a, b):
    """Solve a x = b for a square matrix a and vector or matrix b."""
    lu, piv = _factor(a)
    b = np.asarray(b, dtype=np.float64)
    if b.shape[0] != lu.shape[0]:
        raise LengthMismatchError(
            f"rhs has {b.shape[0]} rows, matrix is {lu.shape[0]}x{lu.shape[0]}"
        )
    return lu_solve((lu, piv), b, check_finite=False)


def invert(a):
    """Explicit inverse of a square matrix via LU solve against identity."""
    lu, piv = _factor(a)
    return lu_solve((lu, piv), np.eye(lu.shape[0]), check_finite=False)


def outer(u, v):
    """Outer product u v^T of two equal-length vectors."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or v.ndim != 1 or u.shape[0] != v.shape[0]:
        raise LengthMismatchError(
            f"outer product needs equal-length vectors, got {u.shape} and {v.shape}"
        )
    return np.outer(u, v)


def symmetrize(a):
    """Return (a + a^T) / 2. Idempotent; the fixed points are symmetric matrices."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise LengthMismatchError(f"expected a square matrix, got shape {a.shape}")
    return (a + a.T) / 2.0
