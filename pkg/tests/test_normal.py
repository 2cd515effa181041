from fractions import Fraction
from random import Random

import pytest

from ncpoint.freealg import parse_poly
from ncpoint.normal import (
    HeisenbergWitness,
    NotNormalError,
    check_power_identities,
    find_witness,
    is_normal,
    is_q_heisenberg,
    multiplication_injective,
    nu_automorphism,
)
from ncpoint.quotient import DegreeCapError, QuotientCache

F = Fraction


def witness(pres, g, x, y, u):
    names = pres.names
    return HeisenbergWitness(g=parse_poly(g, names), x=parse_poly(x, names),
                             y=parse_poly(y, names), u=u)


@pytest.fixture
def cache44(downup_4_4):
    return QuotientCache(downup_4_4, 8)


@pytest.fixture
def cache21(downup_2_1):
    return QuotientCache(downup_2_1, 8)


class TestIsNormal:
    def test_downup_2_1(self, cache21, downup_2_1):
        g = parse_poly("x*y - y*x", downup_2_1.names)
        assert is_normal(cache21, g)

    def test_free_generator_not_normal(self, free_2):
        cache = QuotientCache(free_2, 3)
        # span{x^2, xy} differs from span{x^2, yx}
        assert not is_normal(cache, parse_poly("x", free_2.names))

    def test_central_generator(self, commutative_plane):
        cache = QuotientCache(commutative_plane, 3)
        assert is_normal(cache, parse_poly("x", commutative_plane.names))

    def test_cap_guard(self, downup_4_4):
        cache = QuotientCache(downup_4_4, 2)
        with pytest.raises(DegreeCapError):
            is_normal(cache, parse_poly("x*y - 2*y*x", downup_4_4.names))


class TestNuAutomorphism:
    def test_downup_4_4_scalars(self, cache44, downup_4_4):
        g = parse_poly("x*y - 2*y*x", downup_4_4.names)
        nu = nu_automorphism(cache44, g)
        assert nu.matrix == ((F(1, 2), F(0)), (F(0), F(2)))

    def test_central_gives_identity(self, commutative_plane):
        cache = QuotientCache(commutative_plane, 3)
        nu = nu_automorphism(cache, parse_poly("x", commutative_plane.names))
        assert nu.matrix == ((F(1), F(0)), (F(0), F(1)))

    def test_downup_2_1_identity(self, cache21, downup_2_1):
        nu = nu_automorphism(cache21, parse_poly("x*y - y*x", downup_2_1.names))
        assert nu.matrix == ((F(1), F(0)), (F(0), F(1)))

    def test_not_normal_raises(self, free_2):
        cache = QuotientCache(free_2, 3)
        with pytest.raises(NotNormalError):
            nu_automorphism(cache, parse_poly("x", free_2.names))

    def test_defining_congruence(self, cache44, downup_4_4):
        g = parse_poly("x*y - 2*y*x", downup_4_4.names)
        nu = nu_automorphism(cache44, g)
        for j in range(2):
            a = parse_poly(downup_4_4.names[j], downup_4_4.names)
            lhs = nu.apply(a) * g
            rhs = g * a
            assert cache44.is_zero_mod_ideal(lhs - rhs)

    def test_scales_witness_generators_by_u(self, downup_4_4, downup_2_1):
        # whenever the witness x, y are themselves generators,
        # nu(x) = x/u and nu(y) = u y modulo the ideal
        from ncpoint.scalars import sc_pow
        for pres, gtxt, u in ((downup_4_4, "x*y - 2*y*x", F(2)),
                              (downup_2_1, "x*y - y*x", F(1))):
            cache = QuotientCache(pres, 8)
            g = parse_poly(gtxt, pres.names)
            nu = nu_automorphism(cache, g)
            x = parse_poly("x", pres.names)
            y = parse_poly("y", pres.names)
            assert cache.is_zero_mod_ideal(nu.apply(x) - x.scale(sc_pow(u, -1)))
            assert cache.is_zero_mod_ideal(nu.apply(y) - y.scale(u))


class TestIsQHeisenberg:
    def test_downup_2_1(self, cache21, downup_2_1):
        w = witness(downup_2_1, "x*y - y*x", "x", "y", F(1))
        assert is_q_heisenberg(cache21, w).ok

    def test_downup_4_4(self, cache44, downup_4_4):
        w = witness(downup_4_4, "x*y - 2*y*x", "x", "y", F(2))
        assert is_q_heisenberg(cache44, w).ok

    def test_d_2_1(self, d_2_1):
        cache = QuotientCache(d_2_1, 8)
        w = witness(d_2_1, "x*x*y + 2*x*y*x + y*x*x", "x", "x*y + y*x", F(-1))
        assert is_q_heisenberg(cache, w).ok

    def test_commutative_plane_fails(self, commutative_plane):
        cache = QuotientCache(commutative_plane, 8)
        w = witness(commutative_plane, "x*y - y*x", "x", "y", F(1))
        rep = is_q_heisenberg(cache, w)
        assert not rep.ok
        assert "g nonzero mod ideal" in rep.failed_clauses()

    def test_wrong_u_fails(self, cache44, downup_4_4):
        w = witness(downup_4_4, "x*y - 2*y*x", "x", "y", F(3))
        rep = is_q_heisenberg(cache44, w)
        assert not rep.ok
        assert any("(i)" in c or "(ii)" in c for c in rep.failed_clauses())

    def test_derived_cubic_identities(self, cache44, cache21, downup_4_4, downup_2_1):
        # x^2 y - 2u xyx + u^2 yx^2 and xy^2 - 2u yxy + u^2 y^2 x vanish
        for cache, pres, u in ((cache44, downup_4_4, F(2)),
                               (cache21, downup_2_1, F(1))):
            names = pres.names
            x, y = parse_poly("x", names), parse_poly("y", names)
            lhs1 = x * x * y - (x * y * x).scale(2 * u) + (y * x * x).scale(u * u)
            lhs2 = x * y * y - (y * x * y).scale(2 * u) + (y * y * x).scale(u * u)
            assert cache.is_zero_mod_ideal(lhs1)
            assert cache.is_zero_mod_ideal(lhs2)

    def test_normality_closed_under_product(self, cache44, downup_4_4):
        g = parse_poly("x*y - 2*y*x", downup_4_4.names)
        assert is_normal(cache44, g)
        g2 = cache44.normal_form(g * g)
        assert is_normal(cache44, g2)


class TestPowerIdentities:
    def test_downup_2_1_r5(self, cache21, downup_2_1):
        w = witness(downup_2_1, "x*y - y*x", "x", "y", F(1))
        assert check_power_identities(cache21, w, 5)

    def test_downup_4_4_r5(self, cache44, downup_4_4):
        w = witness(downup_4_4, "x*y - 2*y*x", "x", "y", F(2))
        assert check_power_identities(cache44, w, 5)

    def test_r1_tautology(self, cache44, downup_4_4):
        w = witness(downup_4_4, "x*y - 2*y*x", "x", "y", F(2))
        assert check_power_identities(cache44, w, 1)

    def test_cap_guard(self, cache44, downup_4_4):
        w = witness(downup_4_4, "x*y - 2*y*x", "x", "y", F(2))
        with pytest.raises(DegreeCapError):
            check_power_identities(cache44, w, 20)


class TestRegularitySurrogate:
    def test_injectivity_on_domain(self, cache44, downup_4_4):
        g = parse_poly("x*y - 2*y*x", downup_4_4.names)
        for d in range(0, 7):
            assert multiplication_injective(cache44, g, d, "left")
            assert multiplication_injective(cache44, g, d, "right")

    def test_zero_divisor_detected(self, commutative_plane):
        cache = QuotientCache(commutative_plane, 8)
        g = parse_poly("x*y - y*x", commutative_plane.names)  # zero mod I
        assert not multiplication_injective(cache, g, 1, "left")


class TestFindWitness:
    def test_recovers_downup_2_1(self, cache21, downup_2_1):
        g = parse_poly("x*y - y*x", downup_2_1.names)
        w = find_witness(cache21, g, rng=Random(0))
        assert w is not None and w.u == 1

    def test_recovers_d_2_1(self, d_2_1):
        cache = QuotientCache(d_2_1, 8)
        g = parse_poly("x*x*y + 2*x*y*x + y*x*x", d_2_1.names)
        w = find_witness(cache, g, rng=Random(0))
        assert w is not None and w.u == -1
        assert is_q_heisenberg(cache, w).ok

    def test_recovers_downup_4_4(self, cache44, downup_4_4):
        g = parse_poly("x*y - 2*y*x", downup_4_4.names)
        w = find_witness(cache44, g, rng=Random(0))
        assert w is not None and w.u == 2

    def test_commutative_has_no_witness(self, commutative_plane):
        cache = QuotientCache(commutative_plane, 8)
        g = parse_poly("x*y + y*x", commutative_plane.names)  # nonzero mod I
        assert find_witness(cache, g, rng=Random(0)) is None
