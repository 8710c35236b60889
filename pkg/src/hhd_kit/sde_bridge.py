"""Translation between matrix HHDs and SDE decompositions ``F = -(D + Q)U``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linear_hhd import LinearHhd
from .matrix_core import DEFAULT_TOL, as_matrix, condition_number, is_skew, is_symmetric, max_abs

COND_LIMIT = 1e12


class SdeError(ValueError):
    pass


@dataclass(frozen=True)
class SdeDecomposition:
    d: np.ndarray
    q: np.ndarray
    u: np.ndarray
    f: np.ndarray

    @classmethod
    def build(cls, d, q, u) -> "SdeDecomposition":
        d, q, u = as_matrix(d), as_matrix(q), as_matrix(u)
        return cls(d=d, q=q, u=u, f=-(d + q) @ u)

    def check(self, tol: float = DEFAULT_TOL) -> None:
        if not is_symmetric(self.d, tol):
            raise ValueError("D is not symmetric")
        if not is_symmetric(self.u, tol):
            raise ValueError("U is not symmetric")
        if not is_skew(self.q, tol):
            raise ValueError("Q is not skew-symmetric")
        if max_abs(self.f + (self.d + self.q) @ self.u) > tol:
            raise ValueError("F != -(D + Q)U")


def sde_to_hhd(s: SdeDecomposition, tol: float = DEFAULT_TOL) -> LinearHhd:
    """``P = DU``, ``H = -QU``; valid only when ``D`` commutes with ``U``."""
    p = s.d @ s.u
    if max_abs(p - p.T) > tol:
        raise SdeError("DU is not symmetric: D does not commute with U")
    return LinearHhd(p=(p + p.T) / 2, h=-s.q @ s.u, a=s.f)


def hhd_to_sde(d: LinearHhd, tol: float = DEFAULT_TOL) -> SdeDecomposition:
    """``D = I``, ``U = P``, ``Q = -H P⁻¹`` for a strictly orthogonal HHD."""
    cond = condition_number(d.p)
    if cond > COND_LIMIT:
        raise SdeError("gradient part P is singular")
    q = -d.h @ np.linalg.inv(d.p)
    # rounding in P⁻¹ is amplified by cond(P)
    scale = max(1.0, max_abs(q)) * max(1.0, cond)
    if max_abs(q + q.T) > tol * scale:
        raise SdeError("Q = -H P⁻¹ is not skew-symmetric; the HHD is not strictly orthogonal")
    q = (q - q.T) / 2
    n = d.n
    return SdeDecomposition(d=np.eye(n), q=q, u=d.p.copy(), f=d.a.copy())


def _skew_basis(n: int) -> list[np.ndarray]:
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n))
            e[i, j], e[j, i] = 1.0, -1.0
            basis.append(e)
    return basis


def equivalence_condition(dmat, d: LinearHhd, tol: float = 1e-8) -> np.ndarray:
    """Find skew ``Q`` with ``QP + HD = 0``, given that ``D`` commutes with ``P``.

    The unknowns are the strictly upper entries of ``Q``; the ``n²`` linear
    equations are solved in the least-squares sense through the normal
    equations and the residual is accepted at ``tol``.
    """
    dmat = as_matrix(dmat, d.n)
    if not is_symmetric(dmat, DEFAULT_TOL):
        raise SdeError("D must be symmetric")
    if condition_number(dmat) > COND_LIMIT:
        raise SdeError("D must be regular")
    if max_abs(dmat @ d.p - d.p @ dmat) > tol:
        raise SdeError("D does not commute with P")
    target = -(d.h @ dmat)
    basis = _skew_basis(d.n)
    if not basis:
        if max_abs(target) > tol:
            raise SdeError("no skew-symmetric Q satisfies QP + HD = 0")
        return np.zeros((1, 1))
    m = np.column_stack([(e @ d.p).ravel() for e in basis])
    rhs = target.ravel()
    coef = np.linalg.lstsq(m.T @ m, m.T @ rhs, rcond=None)[0]
    q = np.einsum("k,kij->ij", coef, np.array(basis))
    if max_abs(q @ d.p + d.h @ dmat) > tol:
        raise SdeError("no skew-symmetric Q satisfies QP + HD = 0")
    return q
