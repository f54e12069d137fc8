import itertools

import pytest
from hypothesis import given, strategies as st

from asmoments.errors import RejectedParameterError
from asmoments.exact import CycInt
from asmoments.gf import (FieldElem, abs_trace, canonical_modulus, embed, embedding_image, extension,
                          is_irreducible_fp, make_field, psi_value)


def _no_root(m, p):
    return all(sum(c * x ** i for i, c in enumerate(m)) % p for x in range(p))


def test_prime_field_modulus():
    F = make_field(3, 1)
    assert F.q == 3 and F.modulus == (0, 1)


def test_f9_modulus_is_least_irreducible_quadratic():
    # lex order low-degree-first over (c0, c1), monic
    first = min((c0, c1, 1) for c0 in range(3) for c1 in range(3) if _no_root((c0, c1, 1), 3))
    assert make_field(3, 2).modulus == first


def test_f125_modulus_irreducible():
    m = make_field(5, 3).modulus
    assert len(m) == 4 and m[-1] == 1
    assert _no_root(m, 5)  # a cubic with no root has no factor of degree <= 1


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_canonical_modulus_is_lexicographically_least(p, e):
    # tuples compare low-degree coefficient first
    cands = sorted(tuple(cs) + (1,) for cs in itertools.product(range(p), repeat=e))
    found = next(m for m in cands if is_irreducible_fp(m, p))
    assert canonical_modulus(p, e) == found


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_rejects_bad_characteristic(p):
    with pytest.raises(RejectedParameterError):
        make_field(p, 1)


def test_trace_of_one_and_zero(F9):
    assert abs_trace(F9.elem(1)) == 2
    assert abs_trace(F9.elem(0)) == 0


def test_trace_power_sum_oracle(F27):
    for a in range(F27.q):
        x = F27.elem(a)
        s = x + x ** 3 + x ** 9
        assert s.value < 3 and s.value == abs_trace(x)


@pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (3, 3), (5, 2)])
def test_trace_linear_and_surjective(p, e):
    F = make_field(p, e)
    for a in range(F.q):
        for b in range(0, F.q, max(1, F.q // 7)):
            assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % p
        assert F.trace(F.mul(F.from_int(2), a)) == 2 * F.trace(a) % p
    assert {F.trace(a) for a in range(F.q)} == set(range(p))


@pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (5, 2)])
def test_frobenius_fixes_everything(p, e):
    F = make_field(p, e)
    assert all(F.pow(a, F.q) == a for a in range(F.q))


def test_psi_values():
    assert psi_value(0, 3) == CycInt.one(3)
    assert psi_value(1, 3) == CycInt(3, [0, 1])
    for a in range(5):
        for b in range(5):
            assert psi_value(a, 5) * psi_value(b, 5) == psi_value((a + b) % 5, 5)
    total = CycInt.zero(5)
    for c in range(5):
        total = total + psi_value(c, 5)
    assert total.is_zero()


def test_embed_one_and_trace(F9):
    big = extension(F9, 3)
    assert embed(F9.elem(1), big) == big.elem(1)
    for a in range(F9.q):
        assert abs_trace(embed(F9.elem(a), big)) == 3 * abs_trace(F9.elem(a)) % 3


def test_embedding_of_generator_satisfies_modulus(F9):
    big = extension(F9, 2)
    y = embedding_image(F9, big)
    acc = 0
    for c in reversed(F9.modulus):
        acc = big.add(big.mul(acc, y), big.from_int(c))
    assert acc == 0


@given(st.integers(0, 8), st.integers(0, 8))
def test_embedding_is_ring_homomorphism(a, b):
    F9 = make_field(3, 2)
    big = extension(F9, 2)
    x, y = F9.elem(a), F9.elem(b)
    assert embed(x + y, big) == embed(x, big) + embed(y, big)
    assert embed(x * y, big) == embed(x, big) * embed(y, big)


def test_embedding_needs_divisible_degree(F9):
    with pytest.raises(RejectedParameterError):
        embed(F9.elem(1), make_field(3, 3))


@given(st.integers(1, 26))
def test_inverse(a):
    F = make_field(3, 3)
    x = F.elem(a)
    assert x * x ** -1 == 1
    assert isinstance(x / x, FieldElem) and x / x == 1
