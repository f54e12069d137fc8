"""Finite fields F_{p^m} = F_p[y]/(m(y)) with integer-coded elements.

An element is stored as the base-p integer whose i-th digit is the
coefficient of y**i.  Small fields get full operation tables; large fields
used for exhaustive point counts get exp/log tables of a primitive element
(see :func:`field_tables`).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import RejectedParameterError

TABLE_LIMIT = 125


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, i = [], 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


# dense polynomials over F_p: lists of ints, constant first

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    a = [x % p for x in a]
    n = len(m) - 1
    for top in range(len(a) - 1, n - 1, -1):
        c = a[top]
        if c:
            for i in range(n + 1):
                a[top - n + i] = (a[top - n + i] - c * m[i]) % p
    return _trim(a[:n])


def _fp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, m, p)


def _fp_powmod(a, e, m, p):
    result, base = [1], _fp_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            _trim(a)
        a, b = b, a
    return a


def is_irreducible_fp(m, p) -> bool:
    """Ben-Or test for a monic polynomial over F_p: no factor of degree <= n/2."""
    m = list(m)
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if m[0] % p == 0:
        return False
    h = [0, 1]
    for _ in range(n // 2):
        h = _fp_powmod(h, p, m, p)
        t = h + [0] * max(0, 2 - len(h))
        t[1] = (t[1] - 1) % p
        if len(_fp_gcd(m, _trim(t), p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Least monic irreducible of the given degree, coefficients compared from y**0 up."""
    for low in itertools.product(range(p), repeat=degree):
        m = list(low) + [1]
        if is_irreducible_fp(m, p):
            return tuple(m)
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_p[y]/(modulus); elements are ints in [0, q)."""

    def __init__(self, p: int, e: int, modulus):
        if p == 2 or not is_prime(p):
            raise RejectedParameterError(f"p must be an odd prime, got {p}")
        if e < 1:
            raise RejectedParameterError("degree must be positive")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise RejectedParameterError("modulus must be monic of degree e")
        if not is_irreducible_fp(modulus, p):
            raise RejectedParameterError("modulus is reducible")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._pw = [p ** i for i in range(e)]
        self._embeddings = {}
        self._tables = self.q <= TABLE_LIMIT
        if self._tables:
            self._build_tables()

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    # coding
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for i, c in enumerate(ds):
            if i >= self.e:
                break
            v += (int(c) % self.p) * self._pw[i]
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    # arithmetic on codes
    def _add_raw(self, a, b):
        p = self.p
        if self.e == 1:
            return (a + b) % p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _neg_raw(self, a):
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def _mul_raw(self, a, b):
        if self.e == 1:
            return a * b % self.p
        return self.from_digits(
            _fp_mulmod(_trim(self.digits(a)), _trim(self.digits(b)), self.modulus, self.p)
        )

    def _build_tables(self):
        q = self.q
        self.add_t = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self.mul_t = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self.neg_t = [self._neg_raw(a) for a in range(q)]
        self.inv_t = [0] * q
        for a in range(1, q):
            row = self.mul_t[a]
            self.inv_t[a] = row.index(1)
        self.trace_t = [self._trace_raw(a) for a in range(q)]

    def add(self, a, b):
        return self.add_t[a][b] if self._tables else self._add_raw(a, b)

    def neg(self, a):
        return self.neg_t[a] if self._tables else self._neg_raw(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self.mul_t[a][b] if self._tables else self._mul_raw(a, b)

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_t[a] if self._tables else self.pow(a, self.q - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def _trace_raw(self, a):
        s, x = 0, a
        for _ in range(self.e):
            s = self._add_raw(s, x)
            x = self.pow(x, self.p)
        if s >= self.p:
            raise AssertionError("trace left the prime field")
        return s

    def trace(self, a) -> int:
        """Absolute trace to F_p, returned as an int in [0, p)."""
        return self.trace_t[a] if self._tables else self._trace_raw(a)

    def np_tables(self):
        """(add, mul, neg, trace) as numpy arrays; small fields only."""
        cached = getattr(self, "_np", None)
        if cached is None:
            if not self._tables:
                raise RejectedParameterError("field too large for tables")
            cached = (np.array(self.add_t, dtype=np.int64), np.array(self.mul_t, dtype=np.int64),
                      np.array(self.neg_t, dtype=np.int64), np.array(self.trace_t, dtype=np.int64))
            self._np = cached
        return cached

    def elem(self, a) -> "FieldElem":
        if isinstance(a, FieldElem):
            return a
        if isinstance(a, (list, tuple)):
            return FieldElem(self, self.from_digits(a))
        return FieldElem(self, int(a) % self.q)

    def elements(self):
        return range(self.q)


class FieldElem:
    """Element wrapper with operator syntax; the code is ``value``."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self):
        return self.ctx.digits(self.value)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise RejectedParameterError("elements of different fields")
            return other.value
        return self.ctx.from_int(int(other))

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(self._coerce(other))))

    def __pow__(self, n):
        return FieldElem(self.ctx, self.ctx.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.value))

    def __repr__(self):
        return f"FieldElem({self.coeffs})"


@lru_cache(maxsize=None)
def make_field(p: int, degree: int) -> FieldCtx:
    """F_{p^degree} with the canonical modulus."""
    if p == 2 or not is_prime(p):
        raise RejectedParameterError(f"p must be an odd prime, got {p}")
    if degree < 1:
        raise RejectedParameterError("degree must be positive")
    return FieldCtx(p, degree, canonical_modulus(p, degree))


def abs_trace(x: FieldElem) -> int:
    return x.ctx.trace(x.value)


def psi_value(c: int, p: int):
    """psi(c) = zeta_p**c as a cyclotomic integer."""
    from .exact import CycInt

    return CycInt.zeta_power(p, c)


@lru_cache(maxsize=None)
def primitive_element(ctx: FieldCtx) -> int:
    """Smallest code generating the multiplicative group."""
    order = ctx.q - 1
    if order == 1:
        return 1
    factors = prime_factors(order)
    for g in range(1, ctx.q):
        if all(_pow_generic(ctx, g, order // r) != 1 for r in factors):
            return g
    raise RuntimeError("no primitive element")  # pragma: no cover


def _pow_generic(ctx, a, n):
    return ctx.pow(a, n)


def _eval_fp_poly_in(ctx: FieldCtx, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), ctx.from_int(c))
    return acc


@lru_cache(maxsize=None)
def embedding_image(base: FieldCtx, big: FieldCtx) -> int:
    """Code in ``big`` of the image of y under the stored embedding of ``base``.

    Chosen deterministically: 0 if it is a root of the base modulus, else
    the first power gamma**(j*(Q-1)/(q-1)) that is a root.
    """
    if base.p != big.p or big.e % base.e:
        raise RejectedParameterError("target degree must be a multiple of the source degree")
    if _eval_fp_poly_in(big, base.modulus, 0) == 0:
        return 0
    g = primitive_element(big)
    beta = big.pow(g, (big.q - 1) // (base.q - 1))
    x = 1
    for _ in range(base.q - 1):
        if _eval_fp_poly_in(big, base.modulus, x) == 0:
            return x
        x = big.mul(x, beta)
    raise RuntimeError("base modulus has no root in the extension")  # pragma: no cover


def embed(x: FieldElem, into: FieldCtx) -> FieldElem:
    """Ring embedding F_q -> F_{q^n} fixed by :func:`embedding_image`."""
    return FieldElem(into, embed_code(x.ctx, x.value, into))


def embed_code(base: FieldCtx, a: int, into: FieldCtx) -> int:
    if base is into:
        return a
    beta = embedding_image(base, into)
    acc, pw = 0, 1
    for c in base.digits(a):
        if c:
            acc = into.add(acc, into.mul(into.from_int(c), pw))
        pw = into.mul(pw, beta)
    return acc


def extension(base: FieldCtx, n: int) -> FieldCtx:
    """F_{q^n} as an absolute extension with a stored embedding of ``base``."""
    big = make_field(base.p, base.e * n)
    embedding_image(base, big)
    return big


class FieldTables:
    """Exp/log/trace tables of a primitive element, for exhaustive sweeps."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        p, n = ctx.p, ctx.e
        self.M = ctx.q - 1
        self.gen = primitive_element(ctx)
        self.exp = np.asarray(
            kernels.walk_powers(np.array(ctx.modulus, dtype=np.int64),
                                np.array(ctx.digits(self.gen), dtype=np.int64), p, self.M),
            dtype=np.int64,
        )
        self.log = np.full(ctx.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.M, dtype=np.int64)
        if (self.log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        trvec = np.array([ctx.trace(p ** s) for s in range(n)], dtype=np.int64)
        self.trace = np.empty(self.M, dtype=np.int64)
        step = 1 << 18
        for lo in range(0, self.M, step):
            blk = self.exp[lo:lo + step]
            self.trace[lo:lo + step] = (self.digit_matrix(blk) @ trvec) % p

    def digit_matrix(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        p = self.ctx.p
        return (codes[..., None] // (p ** np.arange(self.ctx.e, dtype=np.int64))) % p

    def add_codes(self, a, b):
        p = self.ctx.p
        da, db = self.digit_matrix(a), self.digit_matrix(b)
        return ((da + db) % p) @ (p ** np.arange(self.ctx.e, dtype=np.int64))


@lru_cache(maxsize=None)
def field_tables(p: int, degree: int) -> FieldTables:
    return FieldTables(make_field(p, degree))
