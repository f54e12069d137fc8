"""Root-of-unity sums, the alpha_k weights and the random-matrix constants.

Every closed form here has a direct-summation twin (suffix ``_direct``)
that adds up the p terms in R.  The closed forms are rational identities in
x, so they hold wherever x**p != 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from ..errors import PoleError, RejectedParameterError
from ..exact import ExactNum, RadicalField, radical_field
from ..gf import FieldCtx


def residue_class(m: int, p: int) -> int:
    """[m]_p in {0, ..., p-1}."""
    return m % p


def _lift(x, R: RadicalField | None) -> ExactNum:
    if isinstance(x, ExactNum):
        return x
    if R is None:
        raise RejectedParameterError("a radical field is needed to lift a rational argument")
    return R.from_fraction(Fraction(x))


def _check_pole(x: ExactNum):
    if (x ** x.R.p) == x.R.one():
        raise PoleError("x**p = 1 is a pole of S_ell")


def s_ell(ell: int, n: int, x, R: RadicalField | None = None) -> ExactNum:
    """S_ell(n, x) = sum_j zeta**(-n j) / (1 - zeta**j x)**ell, closed form, ell in {1, 2, 3}."""
    x = _lift(x, R)
    R = x.R
    p = R.p
    _check_pole(x)
    one = R.one()
    xp = x ** p
    den = one - xp
    if ell == 1:
        return (x ** residue_class(n, p)) * p / den
    if ell == 2:
        r = residue_class(n + 1, p)
        return _xpow(x, r - 1) * p * (one * r / den + xp * p / (den * den))
    if ell == 3:
        r = residue_class(n + 2, p)
        inner = (one * (r * (r - 1)) / den
                 + xp * (p * (2 * r + p - 1)) / (den * den)
                 + xp * xp * (2 * p * p) / (den * den * den))
        return _xpow(x, r - 2) * Fraction(p, 2) * inner
    raise RejectedParameterError("S_ell closed forms exist for ell = 1, 2, 3")


def _xpow(x: ExactNum, k: int) -> ExactNum:
    return x ** k if k >= 0 else x.R.one() / (x ** (-k))


def s_ell_direct(ell: int, n: int, x, R: RadicalField | None = None) -> ExactNum:
    """The defining p-term sum, in R."""
    x = _lift(x, R)
    R = x.R
    p = R.p
    total = R.zero()
    for j in range(p):
        total = total + R.zeta(-n * j) / ((R.one() - R.zeta(j) * x) ** ell)
    return total


def s_unit(n: int, p: int) -> Fraction:
    """sum_{j=1}^{p-1} zeta**(-n j) / (1 - zeta**j) = (p-1)/2 - [n]_p."""
    return Fraction(p - 1, 2) - residue_class(n, p)


def s_unit_direct(n: int, p: int) -> Fraction:
    R = radical_field(p, p)
    total = R.zero()
    for j in range(1, p):
        total = total + R.zeta(-n * j) / (R.one() - R.zeta(j))
    if not total.is_rational():
        raise RejectedParameterError("unit sum is not rational")
    return total.to_fraction()


def alpha_k(k: int, ell: int, p: int, q: int) -> ExactNum:
    """alpha_k(ell) = (q/p) sum_j zeta**(j ell) / (1 - q**-1/2 zeta**j)**k."""
    if k < 1:
        raise RejectedParameterError("k must be positive")
    R = radical_field(p, q)
    s = R.sqrt_q().inverse()
    total = R.zero()
    for j in range(p):
        total = total + R.zeta(j * ell) / ((R.one() - s * R.zeta(j)) ** k)
    return total * Fraction(q, p)


def alpha_1_closed(ell: int, p: int, q: int) -> ExactNum:
    """alpha_1(ell) = q x**[-ell]_p / (1 - x**p) with x = q**-1/2."""
    R = radical_field(p, q)
    x = R.sqrt_q().inverse()
    return (x ** residue_class(-ell, p)) * q / (R.one() - x ** p)


def alpha_k_direct(k: int, ell: int, F: FieldCtx, q: int | None = None) -> ExactNum:
    """sum_{b in F_q} psi(tr b)**ell / (1 - psi(tr b)/sqrt q)**k, term by term."""
    p, q = F.p, F.q
    R = radical_field(p, q)
    s = R.sqrt_q().inverse()
    total = R.zero()
    for b in range(q):
        z = R.zeta(F.trace(b))
        total = total + z ** residue_class(ell, p) / ((R.one() - z * s) ** k)
    return total


def divisor_progression_main(n: int, d: int, k: int, q: int) -> int:
    """binom(n+k-1, k-1) q**(n-d)."""
    return comb(n + k - 1, k - 1) * q ** (n - d)


def rmt_constants(k: int) -> tuple[Fraction, Fraction]:
    """(g_U(k), g_Sp(k)) as exact rationals."""
    if k < 1:
        raise RejectedParameterError("k must be positive")
    gu = Fraction(1)
    for j in range(k):
        gu *= Fraction(factorial(j), factorial(j + k))
    dfac = Fraction(1)
    for j in range(k + 1):
        dfac *= _double_factorial(2 * j - 1)
    return gu, 1 / dfac


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out
