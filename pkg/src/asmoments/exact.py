"""Exact arithmetic in Z[zeta_p], Q(zeta_p) and the radical field R.

R is Q(zeta_p)[t] modulo the minimal polynomial of the positive real
q**(1/(2p)), so sqrt(q) = t**p and q**(1/p) = t**2.  Because Q(zeta_p)
contains the 2p-th roots of unity, Kummer theory gives that minimal
polynomial as t**m - c with c = q**(m/(2p)) in Z[zeta_p]:

* p = 3 mod 4: p is not a square in Q(zeta_p); m = 2p/gcd(e, 2p).
* p = 1 mod 4: sqrt(p) is a Gauss sum; m = p/gcd(e, p).

For q = p this is t**(2p) - q when p = 3 mod 4; for p = 1 mod 4 the
polynomial t**(2p) - q factors and the positive real factor is used.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import RejectedParameterError

DEFAULT_PRECISION = 106


class CycInt:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta**(p-2)."""

    __slots__ = ("p", "c")

    def __init__(self, p: int, coeffs):
        self.p = p
        self.c = tuple(coeffs)
        if len(self.c) != p - 1:
            raise RejectedParameterError("CycInt needs p-1 coordinates")

    @classmethod
    def from_full(cls, p, vec):
        """From coefficients of 1, zeta, ..., zeta**(p-1) (length p)."""
        top = vec[p - 1]
        return cls(p, [vec[i] - top for i in range(p - 1)])

    @classmethod
    def zero(cls, p):
        return cls(p, [0] * (p - 1))

    @classmethod
    def one(cls, p):
        return cls.from_int(p, 1)

    @classmethod
    def from_int(cls, p, n):
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def zeta_power(cls, p, k):
        vec = [0] * p
        vec[k % p] = 1
        return cls.from_full(p, vec)

    @classmethod
    def from_counts(cls, p, counts):
        """sum_r counts[r] * zeta**r."""
        return cls.from_full(p, [int(x) for x in counts])

    def full(self):
        return list(self.c) + [0]

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        return CycInt(self.p, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.c])

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        return CycInt(self.p, [a - b for a, b in zip(self.c, other.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.p
        if isinstance(other, int):
            return CycInt(p, [a * other for a in self.c])
        vec = [0] * p
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        vec[(i + j) % p] += a * b
        return CycInt.from_full(p, vec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise RejectedParameterError("negative power of a cyclotomic integer")
        result, base = CycInt.one(self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self):
        """zeta -> zeta**-1."""
        p = self.p
        vec = [0] * p
        for i, a in enumerate(self.c):
            vec[(-i) % p] += a
        return CycInt.from_full(p, vec)

    def galois(self, a: int):
        """zeta -> zeta**a for a prime to p."""
        p = self.p
        vec = [0] * p
        for i, x in enumerate(self.c):
            vec[(a * i) % p] += x
        return CycInt.from_full(p, vec)

    def is_zero(self):
        return not any(self.c)

    def exact_divide(self, n: int):
        if any(a % n for a in self.c):
            raise ArithmeticError("not divisible")
        return CycInt(self.p, [a // n for a in self.c])

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.c == other.c

    def __hash__(self):
        return hash((self.p, self.c))

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.c)})"

    def to_complex(self, precision=DEFAULT_PRECISION):
        with mpmath.workprec(precision):
            z = mpmath.expjpi(mpmath.mpf(2) / self.p)
            return mpmath.fsum(a * z ** i for i, a in enumerate(self.c) if a)


def cyc_conj(x: CycInt) -> CycInt:
    return x.conj()


def _legendre(a, p):
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def radical_relation(p: int, q: int):
    """(m, c) with t**m = c the minimal relation of q**(1/(2p)) over Q(zeta_p)."""
    e, x = 0, q
    while x % p == 0:
        x //= p
        e += 1
    if x != 1 or e < 1:
        raise RejectedParameterError(f"q={q} is not a power of p={p}")
    if p % 4 == 3:
        g = gcd(e, 2 * p)
        m = 2 * p // g
        return m, CycInt.from_int(p, p ** (e // g))
    g = gcd(e, p)
    m = p // g
    eg = e // g
    if eg % 2 == 0:
        return m, CycInt.from_int(p, p ** (eg // 2))
    gauss = CycInt.from_full(p, [0] + [_legendre(a, p) for a in range(1, p)])
    return m, gauss * (p ** ((eg - 1) // 2))


class RadicalField:
    """The field R for fixed (p, q); elements are :class:`ExactNum`."""

    def __init__(self, p: int, q: int):
        self.p = p
        self.q = q
        self.m, self.c = radical_relation(p, q)
        self.n = self.m * (p - 1)
        self._c_full = self.c.full()
        self._inv_cache = {}

    def __repr__(self):
        return f"RadicalField(p={self.p}, q={self.q})"

    def __reduce__(self):
        return (radical_field, (self.p, self.q))

    # constructors
    def zero(self):
        return ExactNum(self, (0,) * self.n, 1)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return ExactNum(self, (int(n),) + (0,) * (self.n - 1), 1)

    def from_fraction(self, x):
        x = Fraction(x)
        return ExactNum(self, (x.numerator,) + (0,) * (self.n - 1), x.denominator)

    def from_cyc(self, x: CycInt, tpow: int = 0):
        return self.t_pow(tpow) * ExactNum(self, tuple(x.c) + (0,) * (self.n - self.p + 1), 1) \
            if tpow else ExactNum(self, tuple(x.c) + (0,) * (self.n - self.p + 1), 1)

    def zeta(self, k=1):
        return self.from_cyc(CycInt.zeta_power(self.p, k))

    def t_pow(self, k: int):
        """t**k for any integer k."""
        if k < 0:
            hit = self._inv_cache.get(k)
            if hit is None:
                hit = self._inv_cache[k] = self.t_pow(-k).inverse()
            return hit
        quo, rem = divmod(k, self.m)
        base = self.c ** quo
        coords = [0] * self.n
        coords[rem * (self.p - 1):(rem + 1) * (self.p - 1)] = base.c
        return ExactNum(self, tuple(coords), 1)

    def q_pow(self, s):
        """q**s for rational s with 2*p*s integral."""
        s = Fraction(s)
        k = s * 2 * self.p
        if k.denominator != 1:
            raise RejectedParameterError(f"q**{s} is not in R")
        return self.t_pow(int(k))

    def sqrt_q(self):
        return self.t_pow(self.p)


@lru_cache(maxsize=None)
def radical_field(p: int, q: int) -> RadicalField:
    return RadicalField(p, q)


def _norm(num, den):
    if den < 0:
        num, den = [-a for a in num], -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class ExactNum:
    """Element of R: coordinates of t**i zeta**j (i < m, j < p-1) over a common denominator."""

    __slots__ = ("R", "num", "den")

    def __init__(self, R: RadicalField, num, den=1):
        self.R = R
        self.num, self.den = _norm(list(num), int(den))

    # coercion
    def _lift(self, other):
        if isinstance(other, ExactNum):
            return other
        if isinstance(other, (int, Fraction)):
            return self.R.from_fraction(other)
        if isinstance(other, CycInt):
            return self.R.from_cyc(other)
        return NotImplemented

    def coords(self):
        """Rational coordinate matrix as nested lists [i][j]."""
        pm = self.R.p - 1
        return [[Fraction(self.num[i * pm + j], self.den) for j in range(pm)]
                for i in range(self.R.m)]

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = self.den * other.den // gcd(self.den, other.den)
        fa, fb = d // self.den, d // other.den
        return ExactNum(self.R, [a * fa + b * fb for a, b in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return ExactNum(self.R, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return ExactNum(self.R, [a * other.numerator for a in self.num],
                            self.den * other.denominator)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ExactNum(self.R, _mul_raw(self.R, self.num, other.num), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero in R")
            return ExactNum(self.R, [a * other.denominator for a in self.num],
                            self.den * other.numerator)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return exact_div(self, other)

    def __rtruediv__(self, other):
        return exact_div(self._lift(other), self)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.R.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return exact_div(self.R.one(), self)

    def conj(self):
        """Complex conjugation: zeta -> zeta**-1, t fixed (t and c are real)."""
        p, pm = self.R.p, self.R.p - 1
        out = [0] * self.R.n
        for i in range(self.R.m):
            blk = CycInt(p, self.num[i * pm:(i + 1) * pm]).conj()
            out[i * pm:(i + 1) * pm] = blk.c
        return ExactNum(self.R, out, self.den)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.R is other.R and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"ExactNum({self.to_complex(53)})"

    def to_complex(self, precision=DEFAULT_PRECISION):
        return embed_complex(self, precision)

    def to_json(self):
        """Lossless form: rational coordinates as 'a/b' strings, row-major by t-power."""
        return [[str(x) for x in row] for row in self.coords()]


def _mul_raw(R, a, b):
    p, pm, m = R.p, R.p - 1, R.m
    blocks_a = [(i, a[i * pm:(i + 1) * pm]) for i in range(m) if any(a[i * pm:(i + 1) * pm])]
    blocks_b = [(i, b[i * pm:(i + 1) * pm]) for i in range(m) if any(b[i * pm:(i + 1) * pm])]
    acc = [[0] * p for _ in range(2 * m - 1)]
    for i, x in blocks_a:
        for k, y in blocks_b:
            row = acc[i + k]
            for j, xj in enumerate(x):
                if xj:
                    for l, yl in enumerate(y):
                        if yl:
                            row[(j + l) % p] += xj * yl
    cfull = R._c_full
    for s in range(2 * m - 2, m - 1, -1):
        row = acc[s]
        if any(row):
            tgt = acc[s - m]
            for j, xj in enumerate(row):
                if xj:
                    for l, yl in enumerate(cfull):
                        if yl:
                            tgt[(j + l) % p] += xj * yl
    out = []
    for s in range(m):
        row = acc[s]
        top = row[p - 1]
        out.extend(row[j] - top for j in range(pm))
    return out


def _mult_matrix(b: ExactNum):
    """Columns are the coordinates of b * basis_k (integer, scaled by b.den)."""
    R = b.R
    cols = []
    for k in range(R.n):
        e = [0] * R.n
        e[k] = 1
        cols.append(_mul_raw(R, b.num, e))
    return [[cols[k][r] for k in range(R.n)] for r in range(R.n)]


def _solve(mat, rhs):
    """Exact solve of mat x = rhs over Q (Gauss-Jordan on Fractions)."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular multiplication matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        prow = [x / pv for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
    return [aug[r][n] for r in range(n)]


def exact_div(a: ExactNum, b: ExactNum) -> ExactNum:
    """a / b in R via a linear solve against multiplication by b."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero in R")
    R = a.R
    if b.is_rational():
        return a * Fraction(b.den, b.num[0])
    x = _solve(_mult_matrix(b), a.num)
    den = 1
    for v in x:
        den = den * v.denominator // gcd(den, v.denominator)
    # a/b = (a.num/a.den) / (b.num/b.den) = x * b.den / a.den
    num = [v.numerator * (den // v.denominator) * b.den for v in x]
    return ExactNum(R, num, den * a.den)


def embed_complex(x: ExactNum, precision: int = DEFAULT_PRECISION):
    """Value at zeta = exp(2 pi i/p), t = q**(1/(2p)) > 0, as an mpmath mpc."""
    if precision < 53:
        raise RejectedParameterError("precision must be at least 53 bits")
    R = x.R
    pm = R.p - 1
    with mpmath.workprec(precision + 20):
        z = mpmath.expjpi(mpmath.mpf(2) / R.p)
        t = mpmath.root(mpmath.mpf(R.q), 2 * R.p)
        zp = [z ** j for j in range(pm)]
        total = mpmath.mpc(0)
        tp = mpmath.mpf(1)
        for i in range(R.m):
            blk = x.num[i * pm:(i + 1) * pm]
            if any(blk):
                total += tp * mpmath.fsum(a * zp[j] for j, a in enumerate(blk) if a)
            tp *= t
        total /= x.den
    with mpmath.workprec(precision):
        return +total
