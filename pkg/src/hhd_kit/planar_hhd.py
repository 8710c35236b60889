"""Complex potentials and strictly orthogonal HHDs of planar polynomial fields.

A planar HHD ``F = -grad V + J grad H`` is encoded by ``W = 2(-V + iH)``, for
which ``dz̄/dt = ∂W/∂z``.  Any two potentials of the same field differ by a
polynomial in ``z̄`` alone, and the decomposition is strictly orthogonal iff
``|∂W/∂z|² = |∂W/∂z̄|²``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .wirtinger import (
    ZERO_TOL,
    RealPoly2,
    ZPoly,
    conjugate,
    d_dz,
    d_dzbar,
    evaluate,
    field_to_zpoly,
    integrate_dz,
    mod_squared_diff,
    zpoly_to_field,
    zpoly_to_real_parts,
)


class NoStrictDecomposition(ValueError):
    """The construction cannot produce a strictly orthogonal HHD."""

    def __init__(self, message: str, condition: float | None = None):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class PlanarHhd:
    v: RealPoly2
    h: RealPoly2
    w: ZPoly
    f: RealPoly2
    g: RealPoly2

    @classmethod
    def from_potential(cls, w: ZPoly, f: RealPoly2 | None = None, g: RealPoly2 | None = None):
        v, h = zpoly_to_real_parts(w)
        if f is None or g is None:
            f, g = zpoly_to_field(d_dz(w))
        return cls(v=v, h=h, w=w, f=f, g=g)

    def reconstruct(self) -> tuple[RealPoly2, RealPoly2]:
        """``(f, g) = -grad V + J grad H`` computed from ``v`` and ``h`` alone."""
        return -self.v.dx() + self.h.dy(), -self.v.dy() - self.h.dx()

    def reconstruction_error(self) -> float:
        rf, rg = self.reconstruct()
        return max((rf - self.f).max_abs(), (rg - self.g).max_abs())


@dataclass(frozen=True)
class QuadHomField:
    p1: float
    q1: float
    r1: float
    p2: float
    q2: float
    r2: float

    @classmethod
    def from_abc(cls, a: complex, b: complex, c: complex) -> "QuadHomField":
        """Field whose ``f - ig`` equals ``a z² + b zz̄ + c z̄²``."""
        s, t = a + c, c - a
        return cls(
            p1=s.real + b.real,
            q1=2 * t.imag,
            r1=b.real - s.real,
            p2=-b.imag - s.imag,
            q2=2 * t.real,
            r2=s.imag - b.imag,
        )

    def polys(self) -> tuple[RealPoly2, RealPoly2]:
        f = RealPoly2({(2, 0): self.p1, (1, 1): self.q1, (0, 2): self.r1})
        g = RealPoly2({(2, 0): self.p2, (1, 1): self.q2, (0, 2): self.r2})
        return f, g

    def abc(self) -> tuple[complex, complex, complex]:
        a = 0.25 * complex(self.p1 - self.q2 - self.r1, -self.p2 - self.q1 + self.r2)
        b = 0.5 * complex(self.p1 + self.r1, -(self.p2 + self.r2))
        c = 0.25 * complex(self.p1 + self.q2 - self.r1, -self.p2 + self.q1 + self.r2)
        return a, b, c

    def scale(self) -> float:
        return max(abs(x) for x in (self.p1, self.q1, self.r1, self.p2, self.q2, self.r2))


def complex_potential(f: RealPoly2, g: RealPoly2) -> PlanarHhd:
    w = integrate_dz(field_to_zpoly(f, g))
    return PlanarHhd.from_potential(w, f, g)


def gauge_shift(d: PlanarHhd, phi: ZPoly) -> PlanarHhd:
    if any(m for m, _ in phi.terms):
        raise ValueError("gauge term must be a polynomial in zbar only")
    return PlanarHhd.from_potential(d.w + phi, d.f, d.g)


def strict_orthogonality_defect(d: PlanarHhd) -> RealPoly2:
    """The polynomial ``grad V . J grad H``; zero iff the HHD is strictly orthogonal."""
    vx, vy = d.v.dx(), d.v.dy()
    return vx * d.h.dy() - vy * d.h.dx()


def is_strictly_orthogonal(d: PlanarHhd, tol: float = ZERO_TOL) -> bool:
    return strict_orthogonality_defect(d).is_zero(tol)


def solve_linear_planar(a: complex, b: complex) -> PlanarHhd:
    """Strictly orthogonal HHD of the field with ``f - ig = a z + b z̄``."""
    a, b = complex(a), complex(b)
    w0 = ZPoly({(2, 0): a / 2, (1, 1): b})
    if abs(b) <= ZERO_TOL:
        phi = ZPoly({(0, 2): a / 2})
    else:
        phi = ZPoly({(0, 2): a.conjugate() * b / (2 * b.conjugate())})
    return PlanarHhd.from_potential(w0 + phi)


def linear_field_coefficients(matrix) -> tuple[complex, complex]:
    """``(a, b)`` with ``f - ig = az + bz̄`` for the field ``(x, y) -> M (x, y)``."""
    (m11, m12), (m21, m22) = matrix
    f = RealPoly2({(1, 0): m11, (0, 1): m12})
    g = RealPoly2({(1, 0): m21, (0, 1): m22})
    w = field_to_zpoly(f, g)
    return w.coeff(1, 0), w.coeff(0, 1)


def quadratic_condition(q: QuadHomField) -> float:
    p1, q1, r1, p2, q2, r2 = q.p1, q.q1, q.r1, q.p2, q.q2, q.r2
    return q1**2 - 2 * (p2 - r2) * q1 - 4 * p2 * r2 + q2**2 + 2 * (p1 - r1) * q2 - 4 * p1 * r1


def condition_holds(q: QuadHomField, tol: float = 1e-9) -> bool:
    return abs(quadratic_condition(q)) <= tol * (1 + q.scale() ** 2)


def cubic_ansatz_potential(q: QuadHomField) -> ZPoly:
    """``W₀ + C z̄³`` with ``C = 2āc / (3b̄)`` (or ``C = a/3`` when ``b = 0``).

    Built unconditionally; it is strictly orthogonal only when the coefficient
    condition holds.
    """
    a, b, c = q.abc()
    w0 = ZPoly({(3, 0): a / 3, (2, 1): b / 2, (1, 2): c})
    if abs(b) > ZERO_TOL * (1 + q.scale()):
        big_c = 2 * a.conjugate() * c / (3 * b.conjugate())
    else:
        big_c = a / 3
    return w0 + ZPoly({(0, 3): big_c})


def solve_quadratic(q: QuadHomField, tol: float = 1e-9) -> PlanarHhd:
    """Strictly orthogonal HHD of a homogeneous quadratic field.

    Raises :class:`NoStrictDecomposition` when the coefficient condition fails.
    With ``b = 0`` the condition forces ``c = 0`` (the field is ``a z²``, i.e.
    holomorphic in ``z``) and the gauge ``(a/3) z̄³`` is used.
    """
    value = quadratic_condition(q)
    if not condition_holds(q, tol):
        raise NoStrictDecomposition(
            f"coefficient condition violated (value {value:.6g}); "
            "no strictly orthogonal HHD by the cubic construction",
            condition=value,
        )
    a, b, c = q.abc()
    scale = 1 + q.scale()
    if abs(b) <= ZERO_TOL * scale and abs(c) > 1e-6 * scale:
        raise NoStrictDecomposition(
            f"b = 0 with c = {c:.6g} != 0: the single-term gauge cannot balance the field",
            condition=value,
        )
    f, g = q.polys()
    d = PlanarHhd.from_potential(cubic_ansatz_potential(q), f, g)
    defect = strict_orthogonality_defect(d).max_abs()
    if defect > tol * scale**2:
        raise NoStrictDecomposition(
            f"constructed potential leaves orthogonality defect {defect:.3g}", condition=value
        )
    return d


def orbital_derivative_W(d: PlanarHhd, z: complex) -> complex:
    """``Ẇ = |∂W/∂z|² + ∂W/∂z̄ · ∂W/∂z`` at the point ``z``."""
    wz = evaluate(d_dz(d.w), z)
    wzb = evaluate(d_dzbar(d.w), z)
    return abs(wz) ** 2 + wzb * wz


__all__ = [
    "NoStrictDecomposition",
    "PlanarHhd",
    "QuadHomField",
    "complex_potential",
    "condition_holds",
    "conjugate",
    "cubic_ansatz_potential",
    "gauge_shift",
    "is_strictly_orthogonal",
    "linear_field_coefficients",
    "mod_squared_diff",
    "orbital_derivative_W",
    "quadratic_condition",
    "solve_linear_planar",
    "solve_quadratic",
    "strict_orthogonality_defect",
]
