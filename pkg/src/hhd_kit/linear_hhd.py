"""Helmholtz-Hodge decompositions of real square matrices.

A decomposition of ``A`` is a pair ``(P, H)`` with ``A = -P + H``, ``P``
symmetric and ``tr(P) = -tr(A)``.  It describes the linear field ``Ax`` as
``-grad V + u`` with ``V(x) = xᵀPx / 2`` and ``u(x) = Hx``.  It is strictly
orthogonal when ``PH + HᵀP = 0``, which is equivalent to ``P`` solving

    2 P² + AᵀP + PA = 0

together with the trace condition.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_continuous_lyapunov, solve_sylvester

from .matrix_core import (
    DEFAULT_TOL,
    DimensionError,
    as_matrix,
    is_normal,
    is_orthogonal,
    max_abs,
)


class RiccatiError(RuntimeError):
    """Base class for failures to find a strictly orthogonal decomposition."""

    def __init__(self, message: str, report: "RiccatiReport | None" = None):
        super().__init__(message)
        self.report = report


class NonConvergenceError(RiccatiError):
    pass


class TraceViolationError(RiccatiError):
    """The iteration found a Riccati solution whose trace is wrong.

    Such a ``P`` solves the quadratic equation but does not give an HHD; it
    is kept on ``self.p`` for inspection.
    """

    def __init__(self, message: str, p: np.ndarray, report: "RiccatiReport"):
        super().__init__(message, report)
        self.p = p


@dataclass(frozen=True)
class LinearHhd:
    p: np.ndarray
    h: np.ndarray
    a: np.ndarray

    @classmethod
    def from_p(cls, a, p) -> "LinearHhd":
        a = as_matrix(a)
        p = as_matrix(p, len(a))
        p = (p + p.T) / 2
        return cls(p=p, h=a + p, a=a)

    @property
    def n(self) -> int:
        return len(self.a)

    def check(self, tol: float = DEFAULT_TOL) -> None:
        """Raise ``ValueError`` if the HHD invariants fail."""
        if max_abs(self.a - (-self.p + self.h)) > tol:
            raise ValueError("a != -p + h")
        if max_abs(self.p - self.p.T) > tol:
            raise ValueError("p is not symmetric")
        if abs(np.trace(self.p) + np.trace(self.a)) > tol:
            raise ValueError("tr(p) != -tr(a)")

    def orthogonality_matrix(self) -> np.ndarray:
        return self.p @ self.h + self.h.T @ self.p


@dataclass(frozen=True)
class RiccatiReport:
    residual_norm: float
    trace_gap: float
    orthogonality_norm: float
    iterations: int = 0
    route: str = ""

    @classmethod
    def measure(cls, a, p, iterations: int = 0, route: str = "") -> "RiccatiReport":
        a, p = as_matrix(a), as_matrix(p)
        h = a + p
        return cls(
            residual_norm=max_abs(riccati_residual(a, p)),
            trace_gap=abs(float(np.trace(p) + np.trace(a))),
            orthogonality_norm=max_abs(p @ h + h.T @ p),
            iterations=iterations,
            route=route,
        )


@dataclass(frozen=True)
class SolverOptions:
    """Controls for :func:`solve_riccati`.

    ``method`` picks the route:

    * ``"auto"``: 2x2 closed form, then the normal-matrix shortcut, then the
      trace-constrained Newton iteration, then the Lyapunov construction.
    * ``"newton"``: trace-constrained Newton only.
    * ``"sylvester"``: unconstrained Newton (pure Sylvester steps); the trace
      is checked only once the residual has converged.
    * ``"lyapunov"``: ``P = X⁻¹`` with ``AX + XAᵀ = -2I``.

    ``seed`` is the Newton starting point; ``None`` means ``-(A + Aᵀ)/2``.
    """

    max_iterations: int = 100
    tol: float = 1e-10
    seed: np.ndarray | None = None
    method: str = "auto"
    trace_weight: float = 10.0


@dataclass(frozen=True)
class QuadraticForm:
    """``V(x) = ½ xᵀ P x`` with gradient ``Px``."""

    p: np.ndarray

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ self.p @ x)

    def gradient(self, x) -> np.ndarray:
        return self.p @ np.asarray(x, dtype=float)

    def on_grid(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Evaluate a 2-D form on ``meshgrid(xs, ys)`` (rows index ``y``)."""
        if self.p.shape != (2, 2):
            raise DimensionError("grid evaluation needs a 2x2 form")
        X, Y = np.meshgrid(xs, ys)
        (a, b), (_, d) = self.p
        return 0.5 * (a * X * X + 2 * b * X * Y + d * Y * Y)


def symmetric_split(a) -> LinearHhd:
    a = as_matrix(a)
    # + 0.0 clears negative zeros
    return LinearHhd(p=-(a + a.T) / 2 + 0.0, h=(a - a.T) / 2 + 0.0, a=a)


def riccati_residual(a, p) -> np.ndarray:
    a, p = as_matrix(a), as_matrix(p)
    if a.shape != p.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {p.shape}")
    return 2 * p @ p + a.T @ p + p @ a


def is_strictly_orthogonal(d: LinearHhd, tol: float = DEFAULT_TOL) -> bool:
    return max_abs(d.orthogonality_matrix()) <= tol


def solve_2x2(a, tol: float = DEFAULT_TOL) -> LinearHhd:
    """Closed-form strictly orthogonal decomposition of a 2x2 matrix."""
    a = as_matrix(a, 2)
    (a11, b), (c, d) = a
    s, t = a11 + d, b - c
    if abs(t) <= tol:
        return LinearHhd(p=-a.copy(), h=np.zeros((2, 2)), a=a)
    if abs(s) <= tol:
        return LinearHhd(p=np.zeros((2, 2)), h=a.copy(), a=a)
    k = s / (s * s + t * t)
    alpha = k * (a11 * s - c * t)
    beta = k * (c * s + a11 * t)
    p = -np.array([[alpha, beta], [beta, s - alpha]])
    return LinearHhd(p=p, h=a + p, a=a)


def _sym_basis(n: int) -> list[np.ndarray]:
    basis = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            basis.append(e)
    return basis


def _newton_constrained(a, p, opts: SolverOptions) -> tuple[np.ndarray | None, int]:
    # Gauss-Newton on (R(P), tr P + tr A) over symmetric P; the R-block of the
    # Jacobian is the Sylvester map D -> (2P + Aᵀ)D + D(2P + A).
    n = len(a)
    basis = np.array(_sym_basis(n))
    iu = np.triu_indices(n)
    trace_row = opts.trace_weight * np.trace(basis, axis1=1, axis2=2)
    ta = np.trace(a)

    def error(p):
        return max(max_abs(riccati_residual(a, p)), abs(np.trace(p) + ta))

    def step(p):
        r = riccati_residual(a, p)
        gap = np.trace(p) + ta
        m, q = 2 * p + a.T, 2 * p + a
        jac = np.vstack([np.column_stack([(m @ e + e @ q)[iu] for e in basis]), trace_row])
        rhs = np.concatenate([-r[iu], [-opts.trace_weight * gap]])
        return p + np.einsum("k,kij->ij", np.linalg.lstsq(jac, rhs, rcond=None)[0], basis)

    for k in range(opts.max_iterations + 1):
        err = error(p)
        if err <= opts.tol:
            # polish down to rounding level; stop once a step no longer helps
            for _ in range(3):
                nxt = step(p)
                nerr = error(nxt)
                if not nerr < 0.5 * err:
                    break
                p, err = nxt, nerr
            return p, k
        if k == opts.max_iterations or not np.isfinite(err):
            break
        p = step(p)
    return None, opts.max_iterations


def _newton_sylvester(a, p, opts: SolverOptions) -> tuple[np.ndarray | None, int]:
    for k in range(opts.max_iterations + 1):
        r = riccati_residual(a, p)
        if max_abs(r) <= opts.tol:
            return p, k
        if k == opts.max_iterations or not np.all(np.isfinite(r)):
            break
        try:
            delta = solve_sylvester(2 * p + a.T, 2 * p + a, -r)
        except (np.linalg.LinAlgError, ValueError):
            break
        p = p + delta
        p = (p + p.T) / 2
    return None, opts.max_iterations


def lyapunov_route(a) -> np.ndarray | None:
    """Solve the Riccati equation through ``AX + XAᵀ = -2I`` and ``P = X⁻¹``.

    Any symmetric invertible ``X`` solving the Lyapunov equation gives a ``P``
    for which ``A + 2P = -X Aᵀ X⁻¹``, so the trace condition holds
    automatically.  Returns ``None`` when ``X`` is singular or undefined.
    """
    a = as_matrix(a)
    n = len(a)
    try:
        x = solve_continuous_lyapunov(a, -2 * np.eye(n))
    except (np.linalg.LinAlgError, ValueError):
        return None
    if not np.all(np.isfinite(x)):
        return None
    sv = np.linalg.svd(x, compute_uv=False)
    if sv[-1] <= 1e-12 * max(sv[0], 1.0):
        return None
    p = np.linalg.inv(x)
    return (p + p.T) / 2


def solve_riccati(a, opts: SolverOptions | None = None) -> tuple[LinearHhd, RiccatiReport]:
    """Find a strictly orthogonal decomposition of ``a``.

    Returns the decomposition together with its diagnostics.  Raises
    :class:`NonConvergenceError` when no route produces a solution and
    :class:`TraceViolationError` when the unconstrained iteration lands on a
    Riccati solution with the wrong trace.
    """
    opts = opts or SolverOptions()
    a = as_matrix(a)
    n = len(a)

    def accept(p, iterations, route):
        rep = RiccatiReport.measure(a, p, iterations, route)
        return rep.residual_norm <= opts.tol and rep.trace_gap <= opts.tol, rep

    if opts.method == "auto" and opts.seed is None:
        if n == 2:
            d = solve_2x2(a)
            ok, rep = accept(d.p, 0, "closed-form-2x2")
            if ok:
                return d, rep
        if is_normal(a):
            d = symmetric_split(a)
            ok, rep = accept(d.p, 0, "normal-split")
            if ok:
                return d, rep

    seed = symmetric_split(a).p if opts.seed is None else as_matrix(opts.seed, n)
    seed = (seed + seed.T) / 2

    if opts.method == "lyapunov":
        p = lyapunov_route(a)
        if p is None:
            raise NonConvergenceError("Lyapunov route: AX + XAᵀ = -2I has no invertible solution")
        ok, rep = accept(p, 0, "lyapunov")
        if not ok:
            raise NonConvergenceError("Lyapunov route: residual above tolerance", rep)
        return LinearHhd.from_p(a, p), rep

    if opts.method == "sylvester":
        p, its = _newton_sylvester(a, seed, opts)
        if p is None:
            raise NonConvergenceError(
                f"Newton iteration did not converge in {opts.max_iterations} steps"
            )
        ok, rep = accept(p, its, "newton-sylvester")
        if not ok:
            raise TraceViolationError(
                f"Riccati solution has tr(P) + tr(A) = {np.trace(p) + np.trace(a):.3g}",
                p,
                rep,
            )
        return LinearHhd.from_p(a, p), rep

    if opts.method not in ("auto", "newton"):
        raise ValueError(f"unknown method {opts.method!r}")

    p, its = _newton_constrained(a, seed, opts)
    if p is not None:
        ok, rep = accept(p, its, "newton")
        if ok:
            return LinearHhd.from_p(a, p), rep

    if opts.method == "auto":
        p = lyapunov_route(a)
        if p is not None:
            # one polishing pass from the Lyapunov point
            polished, extra = _newton_constrained(a, p, opts)
            if polished is not None:
                p = polished
            ok, rep = accept(p, extra if polished is not None else 0, "lyapunov")
            if ok:
                return LinearHhd.from_p(a, p), rep

    raise NonConvergenceError(
        f"no strictly orthogonal decomposition found for {n}x{n} matrix "
        f"(Newton did not converge in {opts.max_iterations} steps)"
    )


def orthogonal_conjugate(d: LinearHhd, s, tol: float = DEFAULT_TOL) -> LinearHhd:
    """Decomposition of ``S A Sᵀ`` built from ``S P Sᵀ`` and ``S H Sᵀ``."""
    s = as_matrix(s, d.n)
    if not is_orthogonal(s, tol):
        raise ValueError("conjugating matrix is not orthogonal")
    return LinearHhd(p=s @ d.p @ s.T, h=s @ d.h @ s.T, a=s @ d.a @ s.T)


def lyapunov_candidate(d: LinearHhd) -> QuadraticForm:
    return QuadraticForm(d.p)


def orbital_derivative_linear(d: LinearHhd, x) -> float:
    """``grad V . F`` at ``x``, i.e. ``(Px)·(Ax)``."""
    x = np.asarray(x, dtype=float)
    return float((d.p @ x) @ (d.a @ x))
