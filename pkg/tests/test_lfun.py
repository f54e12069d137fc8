import random

import pytest

from asmoments.errors import RejectedParameterError, UnsupportedRamificationError
from asmoments.exact import CycInt, radical_field
from asmoments.families import FamilySpec, family_members
from asmoments.gf import make_field
from asmoments.lfun import (LPoly, afe_absolute_identity, afe_odd_identity, expected_degree,
                            functional_equation_check, genus, l_from_char_sums, l_from_point_counts,
                            l_functions, l_functions_fe, lfun_summary, make_curve, point_count_sum,
                            point_count_sum_naive, psi_f_sums, rh_check)
from asmoments.polyring import Poly


def members(kind, d, p=3, q=3):
    return family_members(FamilySpec(kind, d, p, q))


def random_members(kind, d, n, seed, p=3, q=3):
    ms = members(kind, d, p, q)
    return random.Random(seed).sample(ms, min(n, len(ms)))


def test_linear_sum_vanishes(F3):
    cv = make_curve(F3, [0, 1])
    for n in range(1, 5):
        assert point_count_sum(cv, n).is_zero()


def test_square_sum(F3):
    cv = make_curve(F3, [0, 0, 1])
    assert point_count_sum(cv, 1) == CycInt(3, [1, 2])


@pytest.mark.parametrize("kind,d", [("polynomial", 4), ("ordinary", 2)])
def test_point_counts_match_naive_and_negation(kind, d):
    for cv in random_members(kind, d, 6, d):
        neg = make_curve(cv.F, (-cv.num).c, cv.den.c)
        for n in (1, 2, 3):
            s = point_count_sum(cv, n)
            assert s == point_count_sum_naive(cv, n)
            assert s.conj() == point_count_sum(neg, n)


def test_degree_one_is_trivial(F3):
    L = l_from_point_counts(make_curve(F3, [0, 1], family="polynomial"))
    assert L == LPoly.one(3, 3)


@pytest.mark.parametrize("d", [2, 4, 5])
def test_degree_and_constant_term(d):
    for cv in members("polynomial", d):
        L = l_from_point_counts(cv)
        assert L.degree == d - 1 and L[0] == CycInt.one(3)


def test_dual_route_all_of_d2():
    for cv in members("polynomial", 2):
        assert l_from_point_counts(cv) == l_from_char_sums(cv)


def test_dual_route_random():
    rng = random.Random(5)
    for d in (1, 2, 4, 5):
        for cv in rng.sample(members("polynomial", d), min(13, len(members("polynomial", d)))):
            assert l_from_point_counts(cv) == l_from_char_sums(cv)


@pytest.mark.parametrize("kind,d,p,q", [("ordinary", 2, 3, 3), ("ordinary", 3, 3, 3),
                                        ("polynomial", 2, 3, 9), ("polynomial", 2, 5, 5)])
def test_dual_route_other_families(kind, d, p, q):
    for cv in random_members(kind, d, 12, 1, p, q):
        assert l_from_point_counts(cv) == l_from_char_sums(cv)


def test_first_coefficient_is_a_value_sum(F9):
    for cv in random_members("polynomial", 2, 10, 2, 3, 9):
        expect = CycInt.zero(3)
        for a in range(F9.q):
            expect = expect + CycInt.zeta_power(3, F9.trace(cv.num(a)))
        assert psi_f_sums(cv, 1)[1] == expect


def test_artin_schreier_kernel(F3):
    cv = make_curve(F3, [0, 2, 0, 1])  # x^3 - x
    assert psi_f_sums(cv, 1)[1] == CycInt.from_int(3, 3)


def test_fe_vs_full_route():
    for kind, d in (("polynomial", 4), ("odd", 7), ("ordinary", 3)):
        ms = random_members(kind, d, 15, 3)
        assert l_functions(ms) == l_functions_fe(ms)


def test_odd_family_root_number_is_one():
    R = radical_field(3, 3)
    for d in (5, 7):
        for cv in members("odd", d):
            eps, ok = functional_equation_check(l_from_point_counts(cv), cv)
            assert ok and eps == R.one()


def test_root_number_has_modulus_one():
    R = radical_field(3, 3)
    for cv in random_members("polynomial", 4, 25, 9) + random_members("polynomial", 5, 25, 9):
        eps, ok = functional_equation_check(l_from_point_counts(cv), cv)
        assert ok and eps * eps.conj() == R.one()


def test_fe_degree_zero_vacuous(F3):
    cv = make_curve(F3, [0, 1], family="polynomial")
    assert functional_equation_check(l_from_point_counts(cv), cv)[1]


def test_fe_detects_violation():
    L = LPoly(3, 3, [CycInt.one(3), CycInt.from_int(3, 5)])
    assert not functional_equation_check(L, raise_on_failure=False)[1]


def test_rh():
    assert rh_check(LPoly.one(3, 3))
    assert not rh_check(LPoly(3, 3, [CycInt.one(3), CycInt.from_int(3, -1)]))
    assert all(rh_check(l_from_point_counts(cv)) for cv in members("polynomial", 4))


def test_genus(F3):
    assert genus(make_curve(F3, [0, 1, 0, 0, 1], family="polynomial")) == 3
    x = Poly.x(F3)
    g = x * (x - 1) * (x + 1)
    assert genus(make_curve(F3, [1], g.c, family="ordinary", d=3)) == 4
    assert genus(make_curve(F3, [0, 1])) == 0
    with pytest.raises(UnsupportedRamificationError):
        expected_degree(make_curve(F3, [0, 0, 0, 1]))


@pytest.mark.parametrize("kind,d", [("polynomial", 4), ("ordinary", 2), ("ordinary", 3), ("odd", 5)])
def test_degree_matches_genus(kind, d):
    for cv in random_members(kind, d, 10, 4):
        assert l_from_point_counts(cv).degree * (cv.p - 1) == 2 * genus(cv)


def test_membership_is_enforced(F3):
    with pytest.raises(RejectedParameterError):
        make_curve(F3, [0, 2, 0, 1], family="polynomial")  # x^3 - x: coefficient at x^3
    with pytest.raises(RejectedParameterError):
        make_curve(F3, [0, 1, 1], family="odd")


def test_afe_absolute():
    for cv in members("polynomial", 2):
        assert afe_absolute_identity(cv, 1)
        assert afe_absolute_identity(cv, 2)
    for cv in random_members("polynomial", 4, 20, 6):
        assert afe_absolute_identity(cv, 1)


def test_afe_odd():
    for d in (5, 7):
        for cv in members("odd", d):
            assert afe_odd_identity(cv)


def test_afe_odd_degenerate(F3):
    assert afe_odd_identity(make_curve(F3, [0, 1], family="odd"))


def test_shift_law():
    F = make_field(3, 2)
    for cv in random_members("polynomial", 2, 8, 8, 3, 9):
        L = l_from_point_counts(cv)
        for b in range(F.q):
            shifted = make_curve(F, (cv.num + b).c)
            assert l_from_point_counts(shifted) == L.twist(CycInt.zeta_power(3, F.trace(b)))


def test_psi_power_permutes_family():
    Ls = [l_from_point_counts(cv) for cv in members("polynomial", 2, 5, 5)]
    for a in range(2, 5):
        assert sorted(map(repr, (L.galois(a) for L in Ls))) == sorted(map(repr, Ls))


def test_summary(F3):
    s = lfun_summary(make_curve(F3, [0, 1, 1], family="polynomial"))
    assert s["degree"] == 1 and s["rh_ok"] and s["fe_ok"] and s["genus"] == 1
