import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhd_kit.linear_hhd import solve_2x2
from hhd_kit.planar_hhd import (
    NoStrictDecomposition,
    PlanarHhd,
    QuadHomField,
    complex_potential,
    condition_holds,
    cubic_ansatz_potential,
    gauge_shift,
    is_strictly_orthogonal,
    linear_field_coefficients,
    orbital_derivative_W,
    quadratic_condition,
    solve_linear_planar,
    solve_quadratic,
    strict_orthogonality_defect,
)
from hhd_kit.wirtinger import RealPoly2, ZPoly, d_dz, evaluate, mod_squared_diff, z_to_xy, zpoly_to_field

small = st.floats(-5, 5, allow_nan=False)
cplx = st.builds(complex, small, small)


def real_poly(rng, degree, lo=-3, hi=3):
    return RealPoly2(
        {(i, j): float(rng.uniform(lo, hi)) for i in range(degree + 1) for j in range(degree + 1 - i)}
    )


def mixed_field():
    return complex_potential(RealPoly2({(2, 0): -1, (0, 1): 2}), RealPoly2({(0, 2): -1, (1, 0): 1}))


class TestComplexPotential:
    def test_mixed_field_potential(self):
        d = mixed_field()
        v = RealPoly2({(3, 0): 7 / 24, (2, 1): 1 / 8, (1, 2): 1 / 8, (1, 1): -3 / 4, (0, 3): 7 / 24})
        h = RealPoly2({(3, 0): -1 / 24, (2, 1): -1 / 8, (2, 0): -1 / 8, (1, 2): 1 / 8, (0, 3): 1 / 24, (0, 2): 5 / 8})
        assert (d.v - v).max_abs() <= 1e-12 and (d.h - h).max_abs() <= 1e-12
        assert d.reconstruction_error() == 0

    def test_zero_field(self):
        d = complex_potential(RealPoly2(), RealPoly2())
        assert not d.v and not d.h and not d.w

    def test_rotation(self):
        d = complex_potential(RealPoly2({(0, 1): 1}), RealPoly2({(1, 0): -1}))
        assert not d.v
        # sign fixed by the reconstruction identity: f = H_y, g = -H_x
        assert d.h == RealPoly2({(2, 0): 0.5, (0, 2): 0.5})
        assert d.reconstruction_error() == 0

    def test_reconstruction_random(self, rng):
        for deg in range(1, 6):
            f, g = real_poly(rng, deg), real_poly(rng, deg)
            d = complex_potential(f, g)
            assert d.reconstruction_error() <= 1e-10
            assert not (d.h.dy().dx() - d.h.dx().dy()).max_abs() > 1e-12  # div(J grad H) = 0

    def test_harmonic_pair_is_holomorphic(self, rng):
        for _ in range(20):
            g_z = ZPoly({(m, 0): complex(*rng.normal(size=2)) for m in range(5)})
            f, g = zpoly_to_field(g_z)
            d = complex_potential(f, g)
            assert all(k == 0 or abs(c) <= 1e-13 for (m, k), c in d.w.terms.items())


class TestGauge:
    def test_zero_phi(self):
        d = mixed_field()
        assert gauge_shift(d, ZPoly()).w == d.w

    def test_field_preserved(self):
        d = mixed_field()
        e = gauge_shift(d, ZPoly({(0, 2): 1, (0, 3): 2 - 1j}))
        assert e.reconstruction_error() <= 1e-12

    def test_rejects_z_terms(self):
        with pytest.raises(ValueError):
            gauge_shift(mixed_field(), ZPoly({(1, 1): 1}))

    def test_linear_gauge_strict(self):
        a, b = 1 - 2j, 0.5 + 1j
        d = complex_potential(*zpoly_to_field(ZPoly({(1, 0): a, (0, 1): b})))
        e = gauge_shift(d, ZPoly({(0, 2): a.conjugate() * b / (2 * b.conjugate())}))
        assert is_strictly_orthogonal(e)
        assert not is_strictly_orthogonal(d)


class TestDefect:
    def test_mixed_field_defect_nonzero(self):
        d = mixed_field()
        defect = strict_orthogonality_defect(d)
        # oracle: expand grad V . J grad H from V, H directly
        expect = d.v.dx() * d.h.dy() - d.v.dy() * d.h.dx()
        assert defect == expect and defect.max_abs() > 0.1

    def test_matches_mod_squared_diff(self, rng):
        for _ in range(20):
            d = complex_potential(real_poly(rng, 3), real_poly(rng, 3))
            via_w = z_to_xy(mod_squared_diff(d.w))
            defect = strict_orthogonality_defect(d)
            assert all(abs(c.imag) <= 1e-10 for c in via_w.values())
            assert (RealPoly2({k: c.real / 4 for k, c in via_w.items()}) + defect).max_abs() <= 1e-10

    def test_zero(self):
        assert strict_orthogonality_defect(complex_potential(RealPoly2(), RealPoly2())).is_zero()


class TestLinearPlanar:
    def test_rotation_branch(self):
        d = solve_linear_planar(1j, 0)
        assert d.w == ZPoly({(2, 0): 0.5j, (0, 2): 0.5j})
        assert strict_orthogonality_defect(d).is_zero()

    def test_saddle(self):
        d = solve_linear_planar(0, 1)
        assert d.w.coeff(1, 1) == 1
        assert strict_orthogonality_defect(d).is_zero()
        f, g = d.reconstruct()
        # f - ig = z̄ means (f, g) = (x, y)
        assert f == RealPoly2({(1, 0): 1}) and g == RealPoly2({(0, 1): 1})

    @pytest.mark.parametrize("mu", [-2.0, 1.0, 3.0])
    def test_matches_solve_2x2(self, mu):
        m = np.array([[0.0, 1.0], [-1.0, mu]])
        d = solve_linear_planar(*linear_field_coefficients(m))
        p = solve_2x2(m).p
        quad = RealPoly2({(2, 0): p[0, 0] / 2, (1, 1): p[0, 1], (0, 2): p[1, 1] / 2})
        assert (d.v - quad).max_abs() <= 1e-9

    def test_matches_solve_2x2_random(self, rng):
        for _ in range(100):
            m = rng.uniform(-5, 5, (2, 2))
            if abs(np.trace(m)) < 0.1 or abs(m[0, 1] - m[1, 0]) < 0.1:
                continue
            d = solve_linear_planar(*linear_field_coefficients(m))
            p = solve_2x2(m).p
            quad = RealPoly2({(2, 0): p[0, 0] / 2, (1, 1): p[0, 1], (0, 2): p[1, 1] / 2})
            assert (d.v - quad).max_abs() <= 1e-9

    @settings(max_examples=200)
    @given(cplx, cplx)
    def test_always_strict(self, a, b):
        d = solve_linear_planar(a, b)
        assert strict_orthogonality_defect(d).max_abs() <= 1e-10 * (1 + abs(a) + abs(b)) ** 2
        assert d.reconstruction_error() <= 1e-12 * (1 + abs(a) + abs(b))


class TestQuadraticCondition:
    @pytest.mark.parametrize(
        "coeffs, value",
        [
            ((1, 0, -1, -1, 0, -1), 0),
            ((1, -2, 3, 4, -4, 2), 0),
            ((1, 0, 0, 0, 0, 0), 0),
            ((1, 1, 1, 1, 1, 1), -6),
            ((1, 0, 0, 1, 0, 0), 0),
        ],
    )
    def test_examples(self, coeffs, value):
        assert quadratic_condition(QuadHomField(*coeffs)) == value

    @settings(max_examples=300)
    @given(st.tuples(*[small] * 6))
    def test_equals_abc_form(self, coeffs):
        q = QuadHomField(*coeffs)
        a, b, c = q.abc()
        assert quadratic_condition(q) == pytest.approx(16 * abs(c) ** 2 - 4 * abs(b) ** 2, abs=1e-9)

    @settings(max_examples=300)
    @given(cplx, cplx, cplx)
    def test_from_abc_round_trip(self, a, b, c):
        got = QuadHomField.from_abc(a, b, c).abc()
        assert all(abs(x - y) <= 1e-12 for x, y in zip(got, (a, b, c)))


class TestSolveQuadratic:
    def test_cubic_saddle_pair(self):
        d = solve_quadratic(QuadHomField(1, 0, -1, -1, 0, -1))
        assert (d.v - RealPoly2({(3, 0): -1 / 3, (0, 3): 1 / 3})).max_abs() <= 1e-12
        assert (d.h - RealPoly2({(3, 0): 1 / 3, (0, 3): -1 / 3})).max_abs() <= 1e-12
        assert strict_orthogonality_defect(d).max_abs() <= 1e-10

    def test_generic_manifold_point(self):
        d = solve_quadratic(QuadHomField(1, -2, 3, 4, -4, 2))
        expect = {
            (3, 0): 1 / 6,
            (2, 1): (2 - 3j) / 2,
            (1, 2): -(3 + 2j) / 2,
            (0, 3): -(3 + 2j) / (6 * (2 + 3j)),
        }
        for k, c in expect.items():
            assert abs(d.w.coeff(*k) - c) <= 1e-12
        assert strict_orthogonality_defect(d).max_abs() <= 1e-10
        assert d.reconstruction_error() <= 1e-12

    def test_pure_x_squared(self):
        d = solve_quadratic(QuadHomField(1, 0, 0, 0, 0, 0))
        assert strict_orthogonality_defect(d).max_abs() <= 1e-12

    def test_equal_components(self):
        q = QuadHomField(1, 0, 0, 1, 0, 0)
        a, b, c = q.abc()
        assert b == pytest.approx(0.5 - 0.5j) and c == pytest.approx(0.25 - 0.25j)
        assert strict_orthogonality_defect(solve_quadratic(q)).max_abs() <= 1e-12

    def test_condition_violated(self):
        with pytest.raises(NoStrictDecomposition) as info:
            solve_quadratic(QuadHomField(1, 1, 1, 1, 1, 1))
        assert info.value.condition == -6
        assert "-6" in str(info.value)

    def test_holomorphic_b_zero(self):
        # f - ig = a z²: b = c = 0
        q = QuadHomField.from_abc(2 - 1j, 0, 0)
        d = solve_quadratic(q)
        assert d.w.coeff(0, 3) == pytest.approx((2 - 1j) / 3)
        assert strict_orthogonality_defect(d).is_zero()

    def test_cubic_ansatz_fails_off_manifold(self, rng):
        for _ in range(20):
            q = QuadHomField(*rng.uniform(-3, 3, 6))
            d = PlanarHhd.from_potential(cubic_ansatz_potential(q), *q.polys())
            assert d.reconstruction_error() <= 1e-12
            assert abs(quadratic_condition(q)) > 1e-6
            assert strict_orthogonality_defect(d).max_abs() > 1e-8

    @settings(max_examples=200)
    @given(cplx.filter(lambda z: abs(z) > 0.1), st.floats(0, 2 * np.pi), cplx)
    def test_on_manifold_succeeds(self, b, theta, a):
        c = abs(b) / 2 * cmath.exp(1j * theta)
        q = QuadHomField.from_abc(a, b, c)
        assert condition_holds(q)
        d = solve_quadratic(q)
        assert strict_orthogonality_defect(d).max_abs() <= 1e-9 * (1 + q.scale()) ** 2


class TestOrbitalDerivative:
    def test_holomorphic(self):
        d = PlanarHhd.from_potential(ZPoly({(2, 0): 1}))
        assert orbital_derivative_W(d, 1) == 4

    def test_critical_point(self):
        d = mixed_field()
        assert orbital_derivative_W(d, 0) == 0  # ∂W/∂z = F has no constant term here

    def test_finite_difference(self, rng):
        h = 1e-6
        for d in (mixed_field(), complex_potential(real_poly(rng, 3), real_poly(rng, 3))):
            for z in rng.uniform(-1.5, 1.5, 100) + 1j * rng.uniform(-1.5, 1.5, 100):
                x, y = z.real, z.imag
                fx, gy = d.f(x, y), d.g(x, y)
                wx = (evaluate(d.w, z + h) - evaluate(d.w, z - h)) / (2 * h)
                wy = (evaluate(d.w, z + 1j * h) - evaluate(d.w, z - 1j * h)) / (2 * h)
                oracle = wx * fx + wy * gy
                got = orbital_derivative_W(d, z)
                assert abs(got - oracle) <= 1e-6 * max(1.0, abs(oracle))

    def test_field_is_dz_of_w(self, rng):
        for _ in range(10):
            d = complex_potential(real_poly(rng, 4), real_poly(rng, 4))
            f, g = zpoly_to_field(d_dz(d.w))
            assert (f - d.f).max_abs() <= 1e-10 and (g - d.g).max_abs() <= 1e-10
