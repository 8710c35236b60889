"""Generators and independent oracles shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.stats import ortho_group

from hhd_kit.wirtinger import RealPoly2

NORMAL_3X3 = np.array([[3.0, 0, -4], [0, -1, 0], [4, 0, 3]])
SDE_COUNTEREXAMPLE = np.array([[-1.0, 1, 1], [2, -1, 1], [2, 2, -1]])


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    return ortho_group.rvs(n, random_state=rng) if n > 1 else np.array([[1.0]])


def random_normal(rng: np.random.Generator, n: int, scale: float = 5.0) -> np.ndarray:
    """``S B Sᵀ`` with ``B`` block diagonal of rotation-scaling 2x2 blocks and scalars."""
    b = np.zeros((n, n))
    i = 0
    while i < n:
        if i + 1 < n and rng.random() < 0.6:
            re, im = rng.uniform(-scale, scale, 2)
            b[i : i + 2, i : i + 2] = [[re, im], [-im, re]]
            i += 2
        else:
            b[i, i] = rng.uniform(-scale, scale)
            i += 1
    s = random_orthogonal(rng, n)
    return s @ b @ s.T


def random_2x2_with_margins(rng, low=-5.0, high=5.0, margin=0.1) -> np.ndarray:
    while True:
        a = rng.uniform(low, high, (2, 2))
        if abs(a[0, 0] + a[1, 1]) > margin and abs(a[0, 1] - a[1, 0]) > margin:
            return a


def frac_matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def frac_riccati(a, p):
    """Exact ``2P² + AᵀP + PA`` over ``Fraction`` entries."""
    n = len(a)
    at = [[a[j][i] for j in range(n)] for i in range(n)]
    pp, atp, pa = frac_matmul(p, p), frac_matmul(at, p), frac_matmul(p, a)
    return [[2 * pp[i][j] + atp[i][j] + pa[i][j] for j in range(n)] for i in range(n)]


def F(x) -> Fraction:
    return Fraction(x)


# ---- Poisson-based HHD of a planar polynomial field ----------------------------


def _int_x(p: RealPoly2) -> RealPoly2:
    return RealPoly2({(i + 1, j): c / (i + 1) for (i, j), c in p.terms.items()})


def _int_y(p: RealPoly2) -> RealPoly2:
    return RealPoly2({(i, j + 1): c / (j + 1) for (i, j), c in p.terms.items()})


def poisson_solve(h: RealPoly2) -> RealPoly2:
    """Polynomial ``V`` with ``V_xx + V_yy = h`` (terminating series in x-antiderivatives)."""
    v = RealPoly2()
    term = _int_x(_int_x(h))
    sign = 1.0
    while term:
        v = v + sign * term
        term = _int_x(_int_x(term.dy().dy()))
        sign = -sign
    return v


def poisson_hhd(f: RealPoly2, g: RealPoly2) -> tuple[RealPoly2, RealPoly2]:
    """``(V, H)`` with ``(f, g) = -grad V + J grad H`` built in real coordinates only."""
    div = f.dx() + g.dy()
    v = poisson_solve(-div)
    u1, u2 = f + v.dx(), g + v.dy()  # divergence-free remainder, u = (H_y, -H_x)
    h = _int_y(u1)
    rest = -u2 - h.dx()  # depends on x only
    h = h + _int_x(rest)
    return v, h
