"""Truncated power series and Perron coefficient extraction.

Contour integrals in the moment computations are read off as coefficients
of rational generating functions; nothing is integrated numerically.
Coefficients may be ints, Fractions, ExactNums or mpmath numbers, as long
as they support ring operations with each other.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PoleError, RejectedParameterError


class Series:
    """a_0 + a_1 u + ... + a_{N-1} u**(N-1) + O(u**N)."""

    __slots__ = ("c", "N")

    def __init__(self, coeffs, N: int, zero=0):
        cs = list(coeffs)[:N]
        cs += [zero] * (N - len(cs))
        self.c = cs
        self.N = N

    @classmethod
    def monomial(cls, coeff, k: int, N: int, zero=0):
        cs = [zero] * N
        if k < N:
            cs[k] = coeff
        return cls(cs, N, zero)

    @classmethod
    def geometric(cls, a, k: int, N: int, one=1, zero=0):
        """1/(1 - a u**k)."""
        cs = [zero] * N
        term = one
        for i in range(0, N, k):
            cs[i] = term
            term = term * a
        return cls(cs, N, zero)

    def _zero(self):
        return self.c[0] - self.c[0]

    def __add__(self, o):
        if not isinstance(o, Series):
            cs = list(self.c)
            cs[0] = cs[0] + o
            return Series(cs, self.N)
        N = min(self.N, o.N)
        return Series([a + b for a, b in zip(self.c[:N], o.c[:N])], N)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.c], self.N)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Series):
            return Series([a * o for a in self.c], self.N)
        N = min(self.N, o.N)
        z = self._zero()
        out = [z] * N
        nz = [(i, a) for i, a in enumerate(o.c[:N]) if a != 0]
        for i, a in enumerate(self.c[:N]):
            if a == 0:
                continue
            for j, b in nz:
                if i + j >= N:
                    break
                out[i + j] = out[i + j] + a * b
        return Series(out, N)

    __rmul__ = __mul__

    def inverse(self):
        a0 = self.c[0]
        if a0 == 0:
            raise PoleError("series with zero constant term is not invertible")
        inv0 = 1 / a0 if not isinstance(a0, int) else Fraction(1, a0)
        out = [inv0]
        for n in range(1, self.N):
            acc = self._zero()
            for k in range(1, n + 1):
                if self.c[k] != 0:
                    acc = acc + self.c[k] * out[n - k]
            out.append(-acc * inv0)
        return Series(out, self.N)

    def __truediv__(self, o):
        if isinstance(o, Series):
            return self * o.inverse()
        return Series([a / o for a in self.c], self.N)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Series.monomial(self.c[0] ** 0, 0, self.N, self._zero())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def coeff(self, n: int):
        if n < 0:
            return self._zero()
        if n >= self.N:
            raise RejectedParameterError(f"coefficient {n} is beyond the truncation {self.N}")
        return self.c[n]

    def partial_sum(self, n: int):
        """sum_{m <= n} a_m, the coefficient of u**n in the series over (1 - u)."""
        z = self._zero()
        for m in range(min(n, self.N - 1) + 1):
            z = z + self.c[m]
        return z

    def subs_power(self, k: int):
        """f(u**k), truncated at the same order."""
        cs = [self._zero()] * self.N
        for i, a in enumerate(self.c):
            if i * k >= self.N:
                break
            cs[i * k] = a
        return Series(cs, self.N)

    def evaluate(self, u):
        acc = self._zero()
        for a in reversed(self.c):
            acc = acc * u + a
        return acc


def zeta_series(q: int, N: int) -> Series:
    """Z(u) = 1/(1 - q u) = sum q**n u**n."""
    return Series([q ** n for n in range(N)], N)


def zeta_value(q, u):
    """Z(u) at a point, refusing the pole u = 1/q."""
    den = 1 - q * u
    if den == 0:
        raise PoleError("Z(u) has a pole at u = 1/q")
    return 1 / den


def perron_coeff(f: Series, n: int):
    """The coefficient (1/2 pi i) oint f(u) u**-(n+1) du over a small circle."""
    return f.coeff(n)


def perron_partial(f: Series, n: int):
    """(1/2 pi i) oint f(u) / ((1-u) u**(n+1)) du: the sum of coefficients up to n."""
    return f.partial_sum(n)


def poly_series(terms, N: int, zero=0) -> Series:
    """Series of a finite sum of (coeff, exponent) pairs."""
    cs = [zero] * N
    for a, e in terms:
        if e < N:
            cs[e] = cs[e] + a
    return Series(cs, N, zero)


class BiSeries:
    """Truncated series in two variables: {(i, j): coeff}, kept for i + j <= T."""

    __slots__ = ("c", "T")

    def __init__(self, coeffs, T: int):
        self.T = T
        self.c = {k: v for k, v in coeffs.items() if k[0] + k[1] <= T and v != 0}

    @classmethod
    def one(cls, T):
        return cls({(0, 0): 1}, T)

    def __add__(self, o):
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return BiSeries(out, min(self.T, o.T))

    def __sub__(self, o):
        return self + o * (-1)

    def __mul__(self, o):
        if not isinstance(o, BiSeries):
            return BiSeries({k: v * o for k, v in self.c.items()}, self.T)
        T = min(self.T, o.T)
        out = {}
        for (a, b), x in self.c.items():
            for (c, d), y in o.c.items():
                if a + b + c + d <= T:
                    key = (a + c, b + d)
                    out[key] = out.get(key, 0) + x * y
        return BiSeries(out, T)

    __rmul__ = __mul__

    def __eq__(self, o):
        return self.T == o.T and self.c == o.c

    def coeff(self, i, j):
        return self.c.get((i, j), 0)

    def differences(self, o):
        """Monomials where the two series disagree, sorted by total degree."""
        keys = set(self.c) | set(o.c)
        bad = [k for k in keys if self.coeff(*k) != o.coeff(*k)]
        return sorted(bad, key=lambda k: (k[0] + k[1], k))


def bi_geometric(a, i: int, j: int, T: int) -> BiSeries:
    """1/(1 - a u**i v**j)."""
    out = {}
    term, e = 1, 0
    while e * (i + j) <= T:
        out[(e * i, e * j)] = term
        term = term * a
        e += 1
    return BiSeries(out, T)
