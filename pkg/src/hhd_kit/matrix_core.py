"""Small dense matrix helpers shared by the linear-field modules.

Matrices are plain ``float64`` numpy arrays of shape ``(n, n)``; the helpers
here only add validation and the structural predicates the decompositions
need.
"""
from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible."""


def as_matrix(a, n: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a finite square float64 array, optionally of size ``n``."""
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if n is not None and m.shape[0] != n:
        raise DimensionError(f"expected {n}x{n} matrix, got {m.shape[0]}x{m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def multiply(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_symmetric(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    return max_abs(a - a.T) <= tol


def is_skew(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    return max_abs(a + a.T) <= tol


def is_normal(a, tol: float = DEFAULT_TOL) -> bool:
    """True when ``AᵀA`` and ``AAᵀ`` agree entrywise to ``tol``."""
    a = as_matrix(a)
    return max_abs(a.T @ a - a @ a.T) <= tol


def is_orthogonal(s, tol: float = DEFAULT_TOL) -> bool:
    s = as_matrix(s)
    return max_abs(s.T @ s - np.eye(len(s))) <= tol


def trace(a) -> float:
    return float(np.trace(as_matrix(a)))


def condition_number(a) -> float:
    """Ratio of extreme singular values; ``inf`` for exactly singular input."""
    sv = np.linalg.svd(as_matrix(a), compute_uv=False)
    if sv[-1] == 0.0:
        return float("inf")
    return float(sv[0] / sv[-1])
