import itertools
import random

import pytest
from hypothesis import given, strategies as st

from asmoments.errors import NonCoprimeModulusError, RejectedParameterError
from asmoments.formulas.euler import G_series
from asmoments.formulas.series import Series
from asmoments.gf import make_field
from asmoments.polyring import (Poly, RatFn, count_irreducibles, divisor_k, enumerate_monic,
                                enumerate_monic_upto, euler_phi, factorize, gcd, irreducibles,
                                is_irreducible, is_squarefree, moebius, monic_from_index, monic_index,
                                power_sums, root_sum_eval)


def monic_st(q, lo=1, hi=4):
    F = make_field(3, 1) if q == 3 else make_field(3, 2)
    return st.integers(lo, hi).flatmap(
        lambda n: st.lists(st.integers(0, q - 1), min_size=n, max_size=n)
        .map(lambda cs: Poly(F, list(cs) + [1])))


def test_enumeration_counts(F3, F9):
    assert [P.c for P in enumerate_monic(F3, 0)] == [(1,)]
    assert len(list(enumerate_monic(F3, 2))) == 9
    polys = list(enumerate_monic(F9, 3))
    assert len(polys) == 729 and len({P.c for P in polys}) == 729


def test_enumeration_is_seekable(F3):
    full = list(enumerate_monic(F3, 3))
    assert list(enumerate_monic(F3, 3, 5, 11)) == full[5:11]
    assert all(monic_index(P) == i and monic_from_index(F3, 3, i) == P for i, P in enumerate(full))


def test_small_factorisations(F3):
    x = Poly.x(F3)
    assert factorize(x * x + 1) == [(x * x + 1, 1)]
    fac = factorize(x * x - 1)
    assert sorted(P.c for P, _ in fac) == sorted([(x - 1).c, (x + 1).c])
    assert all(m == 1 for _, m in fac)
    with pytest.raises(RejectedParameterError):
        factorize(Poly(F3, ()))


def test_factor_multiply_back(F9):
    rng = random.Random(7)
    for _ in range(20):
        f = Poly(F9, [rng.randrange(9) for _ in range(6)] + [rng.randrange(1, 9)])
        prod = Poly.const(F9, f.lead)
        for P, m in factorize(f):
            assert P.is_monic() and is_irreducible(P)
            prod = prod * P ** m
        assert prod == f


def test_factorisation_is_deterministic(F9):
    f = Poly(F9, [3, 1, 4, 1, 5, 0, 2, 1])
    assert factorize(f) == factorize(Poly(F9, f.c))


def test_divisor_function_values(F3, F9):
    one = Poly.const(F3, 1)
    assert divisor_k(one, 2) == 1
    for P in irreducibles(F3, 2):
        assert divisor_k(P, 2) == 2
    for F in (F3, F9):
        x2 = Poly(F, (0, 0, 1))
        divs = [Poly(F, (1,)), Poly(F, (0, 1)), x2]
        triples = sum(1 for a, b, c in itertools.product(divs, repeat=3) if (a * b * c) == x2)
        assert divisor_k(x2, 3) == triples == 6
    with pytest.raises(RejectedParameterError):
        divisor_k(Poly(F3, (1, 2)), 2)


def _dk_enum(f, k):
    """Ordered k-tuples of monic divisors with product f, by enumeration."""
    F = f.F
    divs = [D for n in range(f.deg + 1) for D in enumerate_monic(F, n) if (f % D).is_zero()]
    return sum(1 for t in itertools.product(divs, repeat=k - 1)
               if (f % _prod(F, t)).is_zero() and (f // _prod(F, t)).is_monic())


def _prod(F, ps):
    out = Poly(F, (1,))
    for P in ps:
        out = out * P
    return out


@pytest.mark.parametrize("k", [2, 3])
def test_divisor_function_against_enumeration(F3, k):
    for n in range(4):
        for f in enumerate_monic(F3, n):
            assert divisor_k(f, k) == _dk_enum(f, k)


@given(monic_st(3), monic_st(3), st.integers(1, 4))
def test_divisor_multiplicative(f, g, k):
    if gcd(f, g).deg == 0:
        assert divisor_k(f * g, k) == divisor_k(f, k) * divisor_k(g, k)


def test_moebius_and_phi(F3, F9):
    for F in (F3, F9):
        assert euler_phi(Poly.x(F)) == F.q - 1
        assert moebius(Poly(F, (0, 0, 1))) == 0
        x = Poly.x(F)
        assert moebius(x * (x - 1)) == 1


def test_phi_counts_units(F3):
    for n in range(1, 4):
        for g in enumerate_monic(F3, n):
            units = sum(1 for m in range(n) for r in enumerate_monic(F3, m)
                        for a in range(1, 3) if gcd(r.scale(a), g).deg == 0)
            assert euler_phi(g) == units


def test_squarefree_matches_factorisation(F3):
    for n in range(1, 5):
        for f in enumerate_monic(F3, n):
            assert is_squarefree(f) == all(m == 1 for _, m in factorize(f))
            assert (moebius(f) != 0) == is_squarefree(f)


@pytest.mark.parametrize("q_e", [(3, 1), (3, 2), (5, 1)])
def test_irreducible_counts(q_e):
    F = make_field(*q_e)
    for n in range(1, 4 if F.q < 9 else 3):
        assert len(irreducibles(F, n)) == count_irreducibles(F.q, n)


def test_squarefree_phi_sums_match_generating_function(F3):
    N = 4
    series = Series([9 ** n for n in range(N + 1)], N + 1) * G_series(3, N)
    for n in range(N + 1):
        direct = sum(euler_phi(g) for g in enumerate_monic(F3, n) if is_squarefree(g))
        assert series.coeff(n) == direct


def test_root_sum_vieta_and_single_root(F9):
    rng = random.Random(3)
    x = Poly.x(F9)
    for k in range(1, 5):
        c = Poly(F9, [rng.randrange(9) for _ in range(k)] + [1])
        assert root_sum_eval(x, c) == F9.neg(c.coeff(k - 1))
    for a in range(1, 9):
        f = RatFn(Poly.const(F9, 1), x)
        assert root_sum_eval(f, Poly(F9, (F9.neg(a), 1))) == F9.inv(a)


def _root_in(big, c):
    return next(a for a in range(big.q) if c(a) == 0)


def test_root_sum_against_extension_field(F3, F27):
    rng = random.Random(11)
    cubics = irreducibles(F3, 3)
    for _ in range(15):
        c = rng.choice(cubics)
        num = Poly(F3, [rng.randrange(3) for _ in range(4)])
        den = Poly(F3, [rng.randrange(1, 3), rng.randrange(3), 1])
        if gcd(den, c).deg > 0:
            continue
        f = RatFn(num, den)
        # F_3 codes coincide with prime-field codes of F_27
        c27 = Poly(F27, c.c)
        alpha = _root_in(F27, c27)
        ev = lambda a: F27.mul(Poly(F27, f.num.c)(a), F27.inv(Poly(F27, f.den.c)(a)))
        direct = 0
        for a in (alpha, F27.pow(alpha, 3), F27.pow(alpha, 9)):
            direct = F27.add(direct, ev(a))
        assert direct == root_sum_eval(f, c)


def test_root_sum_rejects_common_factor(F3):
    x = Poly.x(F3)
    with pytest.raises(NonCoprimeModulusError):
        root_sum_eval(RatFn(Poly.const(F3, 1), x), x * (x + 1))


@given(monic_st(9), monic_st(9), st.integers(0, 8))
def test_root_sum_linear_and_additive(c1, c2, s):
    F = c1.F
    f = Poly(F, (2, 5, 1, 7))
    g = Poly(F, (0, 3, 3))
    assert root_sum_eval(f.scale(s) + g, c1) == F.add(F.mul(s, root_sum_eval(f, c1)), root_sum_eval(g, c1))
    if gcd(c1, c2).deg == 0:
        assert root_sum_eval(f, c1 * c2) == F.add(root_sum_eval(f, c1), root_sum_eval(f, c2))


def test_power_sums_match_root_sums(F9):
    for c in list(enumerate_monic_upto(F9, 2))[1:40]:
        if c.deg < 1:
            continue
        ps = power_sums(c, 5)
        for m in range(1, 6):
            assert ps[m] == root_sum_eval(Poly(F9, [0] * m + [1]), c)
