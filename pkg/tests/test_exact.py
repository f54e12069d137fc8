from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from asmoments.errors import RejectedParameterError
from asmoments.exact import CycInt, ExactNum, cyc_conj, embed_complex, exact_div, radical_field

CONFIGS = [(3, 3), (3, 9), (5, 5)]


def cyc(p):
    return st.lists(st.integers(-5, 5), min_size=p - 1, max_size=p - 1).map(lambda c: CycInt(p, c))


def exact(p, q):
    R = radical_field(p, q)
    return st.tuples(st.lists(st.integers(-4, 4), min_size=R.n, max_size=R.n),
                     st.integers(1, 5)).map(lambda a: ExactNum(R, a[0], a[1]))


def close(a, b, tol=1e-25):
    with mpmath.workprec(106):
        return abs(a - b) <= tol * max(1, abs(b))


def test_conj_basics():
    assert cyc_conj(CycInt.one(3)) == CycInt.one(3)
    assert cyc_conj(CycInt.zeta_power(3, 1)) == CycInt(3, [-1, -1])


@given(cyc(5))
def test_conj_involution_and_norm(x):
    assert x.conj().conj() == x
    n = (x * x.conj()).to_complex()
    with mpmath.workprec(106):
        assert close(n, abs(x.to_complex()) ** 2)
    assert abs(n.imag) < 1e-25


@pytest.mark.parametrize("p,q", CONFIGS)
def test_sqrt_q_squared(p, q):
    R = radical_field(p, q)
    assert exact_div(R.sqrt_q() ** 2, R.from_int(q)) == R.one()
    assert R.t_pow(2 * p) == R.from_int(q)


def test_inverse_of_one_minus_sqrt_q_zeta():
    R = radical_field(3, 3)
    b = R.one() - R.sqrt_q() * R.zeta(1)
    assert exact_div(R.one(), b) * b == R.one()


def test_division_by_zero():
    R = radical_field(3, 3)
    with pytest.raises(ZeroDivisionError):
        exact_div(R.one(), R.zero())


@pytest.mark.parametrize("p,q", CONFIGS)
def test_self_division(p, q):
    import random
    rng = random.Random(p * 100 + q)
    R = radical_field(p, q)
    for _ in range(5):
        a = ExactNum(R, [rng.randint(-3, 3) for _ in range(R.n)], rng.randint(1, 4))
        if not a.is_zero():
            assert exact_div(a, a) == R.one()


def test_embedding_values():
    for p, q in CONFIGS:
        R = radical_field(p, q)
        with mpmath.workprec(106):
            assert close(embed_complex(R.t_pow(p)), mpmath.sqrt(q))
    R = radical_field(3, 3)
    z = embed_complex(R.one() + R.zeta(1))
    with mpmath.workprec(106):
        assert close(z, mpmath.mpc(0.5, mpmath.sqrt(3) / 2))
    with pytest.raises(RejectedParameterError):
        embed_complex(R.one(), 40)


@given(exact(3, 3), exact(3, 3))
def test_embedding_respects_division(a, b):
    assume(not b.is_zero())
    lhs = embed_complex(exact_div(a, b))
    rhs = embed_complex(a) / embed_complex(b)
    assert abs(lhs - rhs) <= 1e-12 * max(1, abs(rhs))
    assert exact_div(a, b) * b == a


@given(exact(3, 9), exact(3, 9), exact(3, 9))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(exact(5, 5), exact(5, 5))
def test_embedding_multiplicative(a, b):
    with mpmath.workprec(106):
        assert close(embed_complex(a * b), embed_complex(a) * embed_complex(b), 1e-25)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cyclotomic_relation(p):
    total = CycInt.zero(p)
    for j in range(p):
        total = total + CycInt.zeta_power(p, j)
    assert total.is_zero()


@pytest.mark.parametrize("p", [3, 5])
def test_galois_sum(p):
    for n in range(-2 * p, 2 * p + 1):
        s = CycInt.zero(p)
        for j in range(p):
            s = s + CycInt.zeta_power(p, j * n)
        assert s == CycInt.from_int(p, p if n % p == 0 else 0)


def test_conj_fixes_radicals():
    R = radical_field(5, 5)
    assert R.sqrt_q().conj() == R.sqrt_q()
    assert R.q_pow(Fraction(1, 5)).conj() == R.q_pow(Fraction(1, 5))
    with pytest.raises(RejectedParameterError):
        R.q_pow(Fraction(1, 3))


def test_json_coordinates():
    R = radical_field(3, 3)
    x = R.sqrt_q() * Fraction(2, 3) + R.zeta(1)
    rows = x.to_json()
    assert len(rows) == R.m and all(len(r) == 2 for r in rows)
    assert rows[0] == ["0", "1"] and rows[3] == ["2/3", "0"]
