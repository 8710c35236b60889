"""Lyapunov-style numerics: orbital derivatives, level sets, the Van der Pol study.

The quadratic form ``W(x) = ½ xᵀPx`` comes from the strictly orthogonal HHD of
the Van der Pol linearization ``[[0, 1], [-1, mu]]``.  Along the full
nonlinear field its orbital derivative vanishes on ``y = gamma(x)``; for
``mu > 0`` and ``x > 1`` that curve lies above the y-nullcline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from skimage.measure import find_contours

from .linear_hhd import QuadraticForm, solve_2x2


@dataclass(frozen=True)
class Grid:
    xmin: float = -4.0
    xmax: float = 4.0
    ymin: float = -4.0
    ymax: float = 4.0
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("grid rectangle is empty")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 6:
            raise ValueError("grid must be xmin,xmax,ymin,ymax,nx,ny")
        x0, x1, y0, y1 = map(float, parts[:4])
        return cls(x0, x1, y0, y1, int(parts[4]), int(parts[5]))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.xmin, self.xmax, self.nx),
            np.linspace(self.ymin, self.ymax, self.ny),
        )


@dataclass(frozen=True)
class Contour:
    level: float
    points: np.ndarray  # (k, 2) array of (x, y)


def vdp_matrix(mu: float) -> np.ndarray:
    return np.array([[0.0, 1.0], [-1.0, mu]])


def vdp_p(mu: float) -> np.ndarray:
    """``P(mu) = -mu/(mu²+4) [[2, -mu], [-mu, mu²+2]]``."""
    k = mu / (mu * mu + 4)
    return -k * np.array([[2.0, -mu], [-mu, mu * mu + 2]])


def c0(mu: float) -> float:
    return math.sqrt((1 + mu * mu) / (2 + mu * mu))


@dataclass(frozen=True)
class VdpCaseStudy:
    mu: float
    grid: Grid = field(default_factory=Grid)

    @property
    def p(self) -> np.ndarray:
        return solve_2x2(vdp_matrix(self.mu)).p

    @property
    def w(self) -> QuadraticForm:
        return QuadraticForm(self.p)

    @property
    def c0(self) -> float:
        return c0(self.mu)


def vdp_field(mu: float, x) -> np.ndarray:
    x1, x2 = np.asarray(x, dtype=float)
    return np.array([x2, mu * (1 - x1 * x1) * x2 - x1])


def _vdp_field_grid(mu, X, Y):
    return Y, mu * (1 - X * X) * Y - X


def gamma_curve(mu: float, x: float) -> float:
    """Root ``y`` of the orbital derivative of ``W`` on the vertical line at ``x``."""
    denom = 2 * ((2 + mu * mu) * x * x - (mu * mu + 1))
    if x <= c0(mu) or denom <= 0:
        raise ValueError(f"gamma is defined for x > c0 = {c0(mu):.6g}, got {x}")
    rad = -4 + 8 * x * x + mu * mu * x**4
    if rad < 0:
        raise ValueError(f"negative radicand {rad} at x = {x}")
    return (-2 * mu * x + mu * x**3 - x * math.sqrt(rad)) / denom


def y_nullcline(mu: float, x: float) -> float:
    if mu == 0:
        raise ValueError("the y-nullcline is vertical for mu = 0")
    if abs(1 - x * x) <= 1e-12:
        raise ValueError(f"y-nullcline has a pole at x = {x}")
    return x / (mu * (1 - x * x))


def strip_bounds(mu: float, x: float) -> tuple[float, float]:
    if mu <= 0 or x <= 1:
        raise ValueError("strip bounds need mu > 0 and x > 1")
    lower, upper = y_nullcline(mu, x), gamma_curve(mu, x)
    if not lower < upper:
        raise ArithmeticError(f"nullcline {lower} not below gamma {upper} at x = {x}")
    return lower, upper


def orbital_derivative_field(w: QuadraticForm, field_fn: Callable, x) -> float:
    """``grad W(x) . F(x)``."""
    return float(w.gradient(x) @ np.asarray(field_fn(x), dtype=float))


def vdp_wdot(mu: float, x) -> float:
    return orbital_derivative_field(QuadraticForm(vdp_p(mu)), lambda v: vdp_field(mu, v), x)


def _refine(w: QuadraticForm, pts: np.ndarray, level: float) -> np.ndarray:
    # one Newton step along the gradient towards the level set
    grads = pts @ w.p.T
    vals = 0.5 * np.einsum("ij,ij->i", pts, grads)
    g2 = np.einsum("ij,ij->i", grads, grads)
    safe = g2 > 1e-300
    step = np.zeros_like(vals)
    step[safe] = (vals[safe] - level) / g2[safe]
    return pts - step[:, None] * grads


def sample_level_sets(w: QuadraticForm, levels: Sequence[float], grid: Grid) -> list[Contour]:
    """Marching-squares polylines of ``W = level`` on ``grid``, one Newton step per vertex."""
    xs, ys = grid.axes()
    values = w.on_grid(xs, ys)
    dx = (grid.xmax - grid.xmin) / (grid.nx - 1)
    dy = (grid.ymax - grid.ymin) / (grid.ny - 1)
    out = []
    for level in levels:
        if not values.min() <= level <= values.max():
            continue
        for rc in find_contours(values, level):
            pts = np.column_stack([grid.xmin + rc[:, 1] * dx, grid.ymin + rc[:, 0] * dy])
            out.append(Contour(float(level), _refine(w, pts, float(level))))
    return out


def wdot_sign_grid(mu: float, grid: Grid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(xs, ys, wdot)`` with ``wdot[iy, ix]`` along the full nonlinear field."""
    xs, ys = grid.axes()
    X, Y = np.meshgrid(xs, ys)
    p = vdp_p(mu)
    gx = p[0, 0] * X + p[0, 1] * Y
    gy = p[1, 0] * X + p[1, 1] * Y
    fx, fy = _vdp_field_grid(mu, X, Y)
    return xs, ys, gx * fx + gy * fy


def gamma_samples(mu: float, xmax: float, n: int = 200) -> np.ndarray:
    x0 = c0(mu)
    xs = np.linspace(x0, xmax, n + 1)[1:]
    return np.array([(x, gamma_curve(mu, x)) for x in xs])


def nullcline_samples(mu: float, xmax: float, n: int = 200) -> np.ndarray:
    xs = np.linspace(1.0, xmax, n + 1)[1:]
    return np.array([(x, y_nullcline(mu, x)) for x in xs])
