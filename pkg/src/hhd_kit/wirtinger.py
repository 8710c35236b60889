"""Polynomials in ``z, z̄`` and in ``x, y`` with Wirtinger calculus.

``ZPoly`` maps ``(m, k)`` to the coefficient of ``z**m * zbar**k``; ``RealPoly2``
maps ``(i, j)`` to the coefficient of ``x**i * y**j``.  Both are immutable and
drop coefficients whose magnitude is at or below ``PRUNE``.

Integer and ``Fraction`` coefficients stay exact (complex ones become
:class:`GaussianRational`); any float coefficient switches that polynomial to
floating point arithmetic.

Differentiation treats ``z`` and ``z̄`` as independent symbols, which on
polynomials coincides with ``∂/∂z = (∂x - i∂y)/2`` and ``∂/∂z̄ = (∂x + i∂y)/2``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

PRUNE = 1e-14
ZERO_TOL = 1e-10


class GaussianRational:
    """Exact ``re + i*im`` with rational parts; mixing with floats yields ``complex``."""

    __slots__ = ("real", "imag")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "real", Fraction(re))
        object.__setattr__(self, "imag", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + other
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * other
        return GaussianRational(
            self.real * o.real - self.imag * o.imag, self.real * o.imag + self.imag * o.real
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / other
        den = o.real * o.real + o.imag * o.imag
        return self * GaussianRational(o.real / den, -o.imag / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, n: int):
        out = GaussianRational(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def __abs__(self):
        return abs(complex(self))

    def __bool__(self):
        return bool(self.real or self.imag)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex, Fraction, GaussianRational)):
            other = complex(other) if isinstance(other, float) else other
            return self.real == other.real and self.imag == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.imag:
            return hash(self.real)
        c = complex(self)
        exact = Fraction(c.real) == self.real and Fraction(c.imag) == self.imag
        return hash(c) if exact else hash((self.real, self.imag))

    def __repr__(self):
        return f"({self.real}{'+' if self.imag >= 0 else '-'}{abs(self.imag)}j)"


I = GaussianRational(0, 1)


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction, GaussianRational)) and not isinstance(c, bool)


def _as_complex(c):
    if _is_exact(c):
        return c if isinstance(c, GaussianRational) else GaussianRational(c)
    return complex(c)


def _as_real(c):
    if isinstance(c, GaussianRational):
        if c.imag:
            raise ValueError(f"real polynomial got complex coefficient {c!r}")
        return c.real
    if _is_exact(c):
        return Fraction(c)
    return float(c)


def _clean(terms: Mapping, cast) -> dict:
    out = {}
    for key, c in terms.items():
        c = cast(c)
        if abs(c) > PRUNE:
            m, k = key
            if m < 0 or k < 0:
                raise ValueError(f"negative degree in monomial {key}")
            out[(int(m), int(k))] = c
    return out


def _add(a: Mapping, b: Mapping, sign=1) -> dict:
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, 0) + sign * c
    return out


def _mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for (m1, k1), c1 in a.items():
        for (m2, k2), c2 in b.items():
            key = (m1 + m2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def _fmt_num(c) -> str:
    if isinstance(c, complex):
        return f"({c.real!r}{c.imag:+}j)"
    return str(c) if isinstance(c, Fraction) else repr(c)


class _Poly:
    _cast = staticmethod(_as_complex)
    _names = ("z", "zbar")

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        object.__setattr__(self, "terms", _clean(terms or {}, self._cast))

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return type(self)(_add(self.terms, other.terms))

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return type(self)(_add(self.terms, other.terms, -1))

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, type(self)):
            return type(self)(_mul(self.terms, other.terms))
        if isinstance(other, (int, float, complex, Fraction, GaussianRational)):
            return type(self)({k: c * other for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, type(self)) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, m: int, k: int):
        return self.terms.get((m, k), self._cast(0))

    def max_abs(self) -> float:
        return float(max((abs(c) for c in self.terms.values()), default=0.0))

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.terms.values())

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        return self.max_abs() <= tol

    def degree(self) -> int:
        return max((m + k for m, k in self.terms), default=0)

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order of the exponent pair."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        a, b = self._names
        parts = []
        for (m, k), c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in ((a, m), (b, k)) if e
            )
            parts.append(f"{_fmt_num(c)}*{mono}" if mono else _fmt_num(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self.sorted_terms())!r})"


class ZPoly(_Poly):
    """Complex polynomial in ``z`` and ``z̄``."""

    _cast = staticmethod(_as_complex)
    _names = ("z", "zbar")
    __slots__ = ()


class RealPoly2(_Poly):
    """Real polynomial in ``x`` and ``y``."""

    _cast = staticmethod(_as_real)
    _names = ("x", "y")
    __slots__ = ()

    def dx(self) -> "RealPoly2":
        return RealPoly2({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def dy(self) -> "RealPoly2":
        return RealPoly2({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def __call__(self, x: float, y: float) -> float:
        return sum(c * x**i * y**j for (i, j), c in self.terms.items())


Z = ZPoly({(1, 0): 1})
ZBAR = ZPoly({(0, 1): 1})


def _power_table(base: Mapping, n: int) -> list[dict]:
    out = [{(0, 0): 1}]
    for _ in range(n):
        out.append(_mul(out[-1], base))
    return out


def _substitute(terms: Mapping, first: Mapping, second: Mapping) -> dict:
    """Replace the two variables of ``terms`` by polynomials ``first``/``second``."""
    if not terms:
        return {}
    deg = max(max(i, j) for i, j in terms)
    p1, p2 = _power_table(first, deg), _power_table(second, deg)
    out: dict = {}
    for (i, j), c in terms.items():
        for key, v in _mul(p1[i], p2[j]).items():
            out[key] = out.get(key, 0) + c * v
    return out


_HALF = Fraction(1, 2)
# x = (z + z̄)/2, y = (z - z̄)/(2i)
_X_IN_Z = {(1, 0): _HALF, (0, 1): _HALF}
_Y_IN_Z = {(1, 0): -_HALF * I, (0, 1): _HALF * I}
# z = x + iy, z̄ = x - iy
_Z_IN_XY = {(1, 0): 1, (0, 1): I}
_ZBAR_IN_XY = {(1, 0): 1, (0, 1): -I}


def xy_to_z(p: Mapping) -> ZPoly:
    """Rewrite a complex polynomial in ``(x, y)`` in terms of ``(z, z̄)``."""
    return ZPoly(_substitute(p, _X_IN_Z, _Y_IN_Z))


def z_to_xy(w: ZPoly) -> dict:
    """Complex ``(x, y)`` coefficients of ``w``; keys are ``(i, j)``."""
    return {k: c for k, c in _substitute(w.terms, _Z_IN_XY, _ZBAR_IN_XY).items() if abs(c) > PRUNE}


def field_to_zpoly(f: RealPoly2, g: RealPoly2) -> ZPoly:
    """``f - i g`` as a polynomial in ``z, z̄``."""
    return xy_to_z(_add(f.terms, {k: I * c for k, c in g.terms.items()}, -1))


def zpoly_to_field(w: ZPoly) -> tuple[RealPoly2, RealPoly2]:
    """Inverse of :func:`field_to_zpoly`: real ``(f, g)`` with ``f - ig = w``."""
    xy = z_to_xy(w)
    f = RealPoly2({k: c.real for k, c in xy.items()})
    g = RealPoly2({k: -c.imag for k, c in xy.items()})
    return f, g


def d_dz(w: ZPoly) -> ZPoly:
    return ZPoly({(m - 1, k): m * c for (m, k), c in w.terms.items() if m})


def d_dzbar(w: ZPoly) -> ZPoly:
    return ZPoly({(m, k - 1): k * c for (m, k), c in w.terms.items() if k})


def integrate_dz(f: ZPoly) -> ZPoly:
    return ZPoly({(m + 1, k): c / (m + 1) for (m, k), c in f.terms.items()})


def conjugate(w: ZPoly) -> ZPoly:
    return ZPoly({(k, m): c.conjugate() for (m, k), c in w.terms.items()})


def zpoly_to_real_parts(w: ZPoly) -> tuple[RealPoly2, RealPoly2]:
    """Split ``W = 2(-V + iH)`` into ``V = -(W + W̄)/4`` and ``H = (W - W̄)/4i``.

    In ``(x, y)`` coordinates ``W̄`` has the conjugate coefficients of ``W``, so
    this reduces to ``V = -Re(W)/2`` and ``H = Im(W)/2`` coefficient-wise.
    """
    xy = z_to_xy(w)
    v = RealPoly2({k: -c.real / 2 for k, c in xy.items()})
    h = RealPoly2({k: c.imag / 2 for k, c in xy.items()})
    return v, h


def real_parts_to_zpoly(v: RealPoly2, h: RealPoly2) -> ZPoly:
    return xy_to_z({k: 2 * (-v.coeff(*k) + I * h.coeff(*k)) for k in set(v.terms) | set(h.terms)})


def mod_squared_diff(w: ZPoly) -> ZPoly:
    """``|∂W/∂z|² - |∂W/∂z̄|²`` as a polynomial; zero iff the HHD is strictly orthogonal."""
    wz, wzb = d_dz(w), d_dzbar(w)
    return wz * conjugate(wz) - wzb * conjugate(wzb)


def evaluate(w: ZPoly, z: complex) -> complex:
    zb = complex(z).conjugate()
    return sum((complex(c) * z**m * zb**k for (m, k), c in w.terms.items()), 0j)


def from_terms(items: Iterable[tuple[int, int, complex]]) -> ZPoly:
    out: dict = {}
    for m, k, c in items:
        out[(m, k)] = out.get((m, k), 0) + c
    return ZPoly(out)
