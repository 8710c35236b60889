import numpy as np
import pytest

from hhd_kit.linear_hhd import LinearHhd, RiccatiError, is_strictly_orthogonal, solve_2x2, solve_riccati, symmetric_split
from hhd_kit.sde_bridge import (
    SdeDecomposition,
    SdeError,
    equivalence_condition,
    hhd_to_sde,
    sde_to_hhd,
)
from helpers import NORMAL_3X3, SDE_COUNTEREXAMPLE, random_orthogonal


def random_skew(rng, n):
    m = rng.normal(size=(n, n))
    return (m - m.T) / 2


def random_sym(rng, n):
    m = rng.normal(size=(n, n))
    return (m + m.T) / 2


def strict_decompositions(rng, count):
    out = []
    while len(out) < count:
        n = int(rng.integers(2, 5))
        a = rng.uniform(-5, 5, (n, n))
        try:
            d = solve_2x2(a) if n == 2 else solve_riccati(a)[0]
        except RiccatiError:
            continue
        if np.linalg.cond(d.p) < 1e3:
            out.append(d)
    return out


class TestSdeToHhd:
    def test_identity_diffusion(self, rng):
        q, u = random_skew(rng, 3), random_sym(rng, 3)
        s = SdeDecomposition.build(np.eye(3), q, u)
        s.check()
        d = sde_to_hhd(s)
        assert np.allclose(d.p, u) and np.allclose(d.h, -q @ u)
        d.check()
        assert is_strictly_orthogonal(d, 1e-8)

    def test_gradient_field(self):
        a = np.array([[1.0, 2], [2, -3]])
        d = sde_to_hhd(SdeDecomposition.build(np.eye(2), np.zeros((2, 2)), -a))
        assert np.array_equal(d.p, -a) and not d.h.any()

    def test_noncommuting(self):
        s = SdeDecomposition.build(np.diag([1.0, 2]), np.zeros((2, 2)), [[0.0, 1], [1, 0]])
        with pytest.raises(SdeError, match="commute"):
            sde_to_hhd(s)

    def test_trace_qu_zero(self, rng):
        for n in (2, 3, 4, 5):
            s = SdeDecomposition.build(np.eye(n), random_skew(rng, n), random_sym(rng, n))
            assert abs(np.trace(s.q @ s.u)) <= 1e-12


class TestHhdToSde:
    def test_normal_example(self):
        s = hhd_to_sde(symmetric_split(NORMAL_3X3))
        s.check()
        assert np.array_equal(s.d, np.eye(3))
        assert np.array_equal(s.u, np.diag([-3.0, 1, -3]))
        assert np.allclose(s.q, -symmetric_split(NORMAL_3X3).h @ np.diag([-1 / 3, 1, -1 / 3]))
        assert np.array_equal(s.q, -s.q.T)

    def test_gradient_only(self):
        p = np.diag([1.0, 2.0])
        s = hhd_to_sde(LinearHhd(p=p, h=np.zeros((2, 2)), a=-p))
        assert not s.q.any()

    def test_hamiltonian_only_fails(self):
        h = np.array([[0.0, 1], [-1, 0]])
        with pytest.raises(SdeError, match="singular"):
            hhd_to_sde(LinearHhd(p=np.zeros((2, 2)), h=h, a=h))

    def test_round_trip(self, rng):
        for d in strict_decompositions(rng, 40):
            back = sde_to_hhd(hhd_to_sde(d))
            assert np.abs(back.p - d.p).max() <= 1e-8
            assert np.abs(back.h - d.h).max() <= 1e-8
            assert abs(np.trace(hhd_to_sde(d).q @ d.p)) <= 1e-8


class TestEquivalenceCondition:
    def test_counterexample(self, rng):
        d = LinearHhd.from_p(SDE_COUNTEREXAMPLE, np.eye(3))
        d.check()
        with pytest.raises(SdeError):
            equivalence_condition(np.eye(3), d)
        for _ in range(10):
            m = rng.normal(size=(3, 3))
            with pytest.raises(SdeError):
                equivalence_condition(m @ m.T + np.eye(3), d)

    def test_identity_recovers_hhd_to_sde(self, rng):
        for d in strict_decompositions(rng, 10):
            q = equivalence_condition(np.eye(d.n), d)
            assert np.allclose(q, -d.h @ np.linalg.inv(d.p), rtol=1e-7, atol=1e-8)

    def test_zero_h(self, rng):
        s = random_orthogonal(rng, 3)
        p = s @ np.diag([1.0, 2, 3]) @ s.T
        dm = s @ np.diag([4.0, 1, 2]) @ s.T  # commutes with p
        d = LinearHhd(p=p, h=np.zeros((3, 3)), a=-p)
        assert np.abs(equivalence_condition(dm, d)).max() <= 1e-12

    def test_noncommuting_rejected(self):
        d = LinearHhd.from_p(np.array([[0.0, 1], [-1, -1]]), np.diag([1.0, 0.0]))
        with pytest.raises(SdeError, match="commute"):
            equivalence_condition(np.array([[1.0, 1], [1, 2]]), d)

    def test_commuting_nonidentity_d(self, rng):
        # build an SDE decomposition with D commuting with U, then recover Q
        s = random_orthogonal(rng, 3)
        u = s @ np.diag([1.0, -2, 3]) @ s.T
        dm = s @ np.diag([2.0, 1, 5]) @ s.T
        q = random_skew(rng, 3)
        sde = SdeDecomposition.build(dm, q, u)
        d = sde_to_hhd(sde)
        got = equivalence_condition(dm, d)
        assert np.allclose(got, q, atol=1e-8)
