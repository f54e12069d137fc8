"""Polynomials and rational functions over F_q, arithmetic functions, root sums.

Coefficients are field codes (see :mod:`asmoments.gf`), constant term first.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .errors import NonCoprimeModulusError, PoleError, RejectedParameterError
from .gf import FieldCtx, FieldElem


# raw tuple arithmetic

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return _trim(out)


def _neg(F, a):
    return [F.neg(x) for x in a]


def _sub(F, a, b):
    return _add(F, a, _neg(F, b))


def _scale(F, a, s):
    if s == 0:
        return []
    return [F.mul(x, s) for x in a]


def _mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    quo = [0] * max(0, len(a) - db)
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top]
        if c:
            f = F.mul(c, inv)
            quo[top - db] = f
            for i, y in enumerate(b):
                a[top - db + i] = F.sub(a[top - db + i], F.mul(f, y))
    return _trim(quo), _trim(a[:db])


def _mod(F, a, b):
    return _divmod(F, a, b)[1]


def _monic(F, a):
    if not a:
        return []
    return _scale(F, a, F.inv(a[-1]))


def _gcd(F, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _invmod(F, a, m):
    """Inverse of a modulo m by the extended Euclidean algorithm."""
    r0, r1 = list(m), _mod(F, a, m)
    s0, s1 = [], [1]
    while r1:
        qt, r = _divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(F, s0, _mul(F, qt, s1))
    if len(r0) != 1:
        raise NonCoprimeModulusError("element is not invertible modulo m")
    return _scale(F, s0, F.inv(r0[0]))


def _powmod(F, a, e, m):
    result, base = [1], _mod(F, a, m)
    while e:
        if e & 1:
            result = _mod(F, _mul(F, result, base), m)
        base = _mod(F, _mul(F, base, base), m)
        e >>= 1
    return result


def _deriv(F, a):
    return _trim([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def _eval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


class Poly:
    """Dense polynomial over a finite field; zero has degree -1."""

    __slots__ = ("F", "c")

    def __init__(self, F: FieldCtx, coeffs=()):
        self.F = F
        self.c = tuple(_trim(int(x) for x in coeffs))

    @classmethod
    def x(cls, F):
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F, a):
        return cls(F, (a,))

    @classmethod
    def from_roots(cls, F, roots):
        out = (1,)
        for r in roots:
            out = _mul(F, out, (F.neg(r), 1))
        return cls(F, out)

    @property
    def deg(self):
        return len(self.c) - 1

    @property
    def lead(self):
        return self.c[-1] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def _other(self, o):
        if isinstance(o, Poly):
            return o.c
        if isinstance(o, FieldElem):
            return (o.value,)
        if isinstance(o, int):
            return tuple(_trim((self.F.from_int(o),)))
        return NotImplemented

    def __add__(self, o):
        return Poly(self.F, _add(self.F, self.c, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return Poly(self.F, _sub(self.F, self.c, self._other(o)))

    def __rsub__(self, o):
        return Poly(self.F, _sub(self.F, self._other(o), self.c))

    def __neg__(self):
        return Poly(self.F, _neg(self.F, self.c))

    def __mul__(self, o):
        return Poly(self.F, _mul(self.F, self.c, self._other(o)))

    __rmul__ = __mul__

    def __divmod__(self, o):
        q, r = _divmod(self.F, self.c, self._other(o))
        return Poly(self.F, q), Poly(self.F, r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __pow__(self, n):
        out = Poly(self.F, (1,))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.c == o.c and self.F is o.F
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        return _eval(self.F, self.c, x)

    def __repr__(self):
        return f"Poly({list(self.c)})"

    def monic(self):
        return Poly(self.F, _monic(self.F, self.c))

    def scale(self, s):
        return Poly(self.F, _scale(self.F, self.c, s))

    def derivative(self):
        return Poly(self.F, _deriv(self.F, self.c))

    def reverse(self, n=None):
        """x**n * self(1/x), with n = deg by default."""
        n = self.deg if n is None else n
        if n < self.deg:
            raise RejectedParameterError("reversal length below degree")
        return Poly(self.F, (0,) * (n - self.deg) + tuple(reversed(self.c)))

    def compose_power(self, k):
        """self(x**k)."""
        out = [0] * (k * self.deg + 1) if self.c else []
        for i, a in enumerate(self.c):
            out[k * i] = a
        return Poly(self.F, out)

    def to_json(self):
        return [self.F.digits(a) for a in self.c]


def gcd(a: Poly, b: Poly) -> Poly:
    return Poly(a.F, _gcd(a.F, a.c, b.c))


def powmod(a: Poly, e: int, m: Poly) -> Poly:
    return Poly(a.F, _powmod(a.F, a.c, e, m.c))


def invmod(a: Poly, m: Poly) -> Poly:
    return Poly(a.F, _invmod(a.F, a.c, m.c))


class RatFn:
    """Reduced fraction num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        F = num.F
        if den is None:
            den = Poly(F, (1,))
        if den.is_zero():
            raise PoleError("zero denominator")
        g = gcd(num, den)
        if g.deg > 0:
            num, den = num // g, den // g
        lead = den.lead
        if lead != 1:
            inv = F.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def F(self):
        return self.num.F

    def is_polynomial(self):
        return self.den.deg == 0

    def __add__(self, o):
        if isinstance(o, RatFn):
            return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)
        return RatFn(self.num + self.den * o, self.den)

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __call__(self, x):
        F = self.F
        d = self.den(x)
        if d == 0:
            raise PoleError("evaluation at a pole")
        return F.mul(self.num(x), F.inv(d))

    def at_infinity(self):
        """Value at infinity, or None at a pole."""
        if self.num.deg > self.den.deg:
            return None
        if self.num.deg < self.den.deg:
            return 0
        return self.F.mul(self.num.lead, self.F.inv(self.den.lead))

    def __eq__(self, o):
        return isinstance(o, RatFn) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num.c, self.den.c))

    def __repr__(self):
        return f"RatFn({list(self.num.c)} / {list(self.den.c)})"


# enumeration

def monic_from_index(F: FieldCtx, n: int, idx: int) -> Poly:
    """The idx-th monic polynomial of degree n in lexicographic order of (c_0, ..., c_{n-1})."""
    q = F.q
    cs = [0] * n
    for k in range(n - 1, -1, -1):
        idx, cs[k] = divmod(idx, q)
    return Poly(F, cs + [1])


def monic_index(f: Poly) -> int:
    idx = 0
    for k in range(f.deg):
        idx = idx * f.F.q + f.c[k]
    return idx


def enumerate_monic(F: FieldCtx, n: int, start: int = 0, stop: int | None = None):
    """Monic polynomials of degree n, seekable by index range."""
    if n < 0:
        raise RejectedParameterError("degree must be non-negative")
    total = F.q ** n
    stop = total if stop is None else min(stop, total)
    for idx in range(start, stop):
        yield monic_from_index(F, n, idx)


def enumerate_monic_upto(F: FieldCtx, n: int):
    for k in range(n + 1):
        yield from enumerate_monic(F, k)


def enumerate_polys_below(F: FieldCtx, n: int):
    """All polynomials of degree < n (including 0)."""
    q = F.q
    for idx in range(q ** n):
        cs = []
        for _ in range(n):
            idx, r = divmod(idx, q)
            cs.append(r)
        yield Poly(F, cs)


# factorization

def _pth_root(F, a):
    p = F.p
    e = F.e
    out = []
    for i in range(0, len(a), p):
        out.append(F.pow(a[i], p ** (e - 1)) if e > 1 else a[i])
    return _trim(out)


def _squarefree_decomposition(F, f):
    out = []
    i = 1
    c = _gcd(F, f, _deriv(F, f))
    w = _divmod(F, f, c)[0]
    while len(w) > 1:
        y = _gcd(F, w, c)
        fac = _divmod(F, w, y)[0]
        if len(fac) > 1:
            out.append((fac, i))
        i += 1
        w = y
        c = _divmod(F, c, y)[0]
    if len(c) > 1:
        for g, j in _squarefree_decomposition(F, _pth_root(F, c)):
            out.append((g, j * F.p))
    return out


def _distinct_degree(F, f):
    out = []
    h = [0, 1]
    i = 1
    while len(f) - 1 >= 2 * i:
        h = _powmod(F, h, F.q, f)
        g = _gcd(F, f, _sub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((g, i))
            f = _divmod(F, f, g)[0]
            h = _mod(F, h, f)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(F, f, i):
    n = len(f) - 1
    if n == i:
        return [f]
    q = F.q
    e = (q ** i - 1) // 2
    k = q
    while True:
        a, idx = [], k
        while idx:
            idx, r = divmod(idx, q)
            a.append(r)
        k += 1
        if len(a) - 1 >= n:
            raise RuntimeError("equal-degree splitting exhausted trials")  # pragma: no cover
        b = _sub(F, _powmod(F, a, e, f), [1])
        g = _gcd(F, f, b)
        if 0 < len(g) - 1 < n:
            return _equal_degree(F, g, i) + _equal_degree(F, _divmod(F, f, g)[0], i)


def _factor_raw(F, f):
    f = _monic(F, f)
    out = {}
    for sq, mult in _squarefree_decomposition(F, f):
        for g, i in _distinct_degree(F, sq):
            for P in _equal_degree(F, g, i):
                key = tuple(P)
                out[key] = out.get(key, 0) + mult
    return sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))


def factorize(f: Poly):
    """Monic irreducible factors with multiplicities, in a deterministic order."""
    if f.is_zero():
        raise RejectedParameterError("cannot factor the zero polynomial")
    if f.deg == 0:
        return []
    return [(Poly(f.F, P), m) for P, m in _factor_raw(f.F, f.c)]


def _require_monic(f):
    if not f.is_monic():
        raise RejectedParameterError("monic polynomial required")


def divisor_k(f: Poly, k: int) -> int:
    """Number of ordered k-tuples of monic polynomials with product f."""
    _require_monic(f)
    if k < 1:
        raise RejectedParameterError("k must be positive")
    out = 1
    for _, a in factorize(f):
        out *= comb(a + k - 1, k - 1)
    return out


def moebius(f: Poly) -> int:
    _require_monic(f)
    fac = factorize(f)
    if any(a > 1 for _, a in fac):
        return 0
    return (-1) ** len(fac)


def euler_phi(f: Poly) -> int:
    _require_monic(f)
    out = 1
    q = f.F.q
    for P, a in factorize(f):
        n = q ** P.deg
        out *= n ** (a - 1) * (n - 1)
    return out


def is_squarefree(f: Poly) -> bool:
    _require_monic(f)
    if f.deg <= 0:
        return True
    d = f.derivative()
    if d.is_zero():
        return False
    return gcd(f, d).deg == 0


def is_irreducible(f: Poly) -> bool:
    fac = factorize(f)
    return len(fac) == 1 and fac[0][1] == 1


def irreducibles(F: FieldCtx, n: int):
    """Monic irreducibles of degree n by enumeration."""
    return [P for P in enumerate_monic(F, n) if is_irreducible(P)]


def count_irreducibles(q: int, n: int) -> int:
    """Gauss's formula (1/n) sum_{k|n} mu(n/k) q**k."""
    total = 0
    for k in range(1, n + 1):
        if n % k == 0:
            total += _int_moebius(n // k) * q ** k
    return total // n


def _int_moebius(n):
    out, i = 1, 2
    while i * i <= n:
        if n % i == 0:
            n //= i
            if n % i == 0:
                return 0
            out = -out
        i += 1
    if n > 1:
        out = -out
    return out


# root sums

def companion_matrix(c: Poly):
    _require_monic(c)
    F, k = c.F, c.deg
    C = [[0] * k for _ in range(k)]
    for i in range(1, k):
        C[i][i - 1] = 1
    for i in range(k):
        C[i][k - 1] = F.neg(c.coeff(i))
    return C


def _matmul(F, A, B):
    n = len(A)
    add, mul = F.add, F.mul
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for l in range(n):
            a = Ai[l]
            if a:
                Bl = B[l]
                for j in range(n):
                    if Bl[j]:
                        row[j] = add(row[j], mul(a, Bl[j]))
    return out


def _mat_poly(F, coeffs, C):
    n = len(C)
    acc = [[0] * n for _ in range(n)]
    for a in reversed(coeffs):
        acc = _matmul(F, acc, C)
        if a:
            for i in range(n):
                acc[i][i] = F.add(acc[i][i], a)
    return acc


def _mat_solve(F, D, N):
    """X with D X = N; raises if D is singular."""
    n = len(D)
    aug = [list(D[i]) + list(N[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise NonCoprimeModulusError("denominator shares a root with the modulus")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        prow = [F.mul(x, inv) for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(aug[r], prow)]
    return [row[n:] for row in aug]


def root_sum_eval(f, c: Poly) -> int:
    """Sum of f(alpha) over the roots of c (with multiplicity), via the companion matrix."""
    if isinstance(f, Poly):
        f = RatFn(f)
    _require_monic(c)
    if c.deg < 1:
        raise RejectedParameterError("modulus must have positive degree")
    F = c.F
    C = companion_matrix(c)
    N = _mat_poly(F, f.num.c, C)
    if f.den.deg > 0:
        if gcd(f.den, c).deg > 0:
            raise NonCoprimeModulusError("denominator shares a factor with c")
        N = _mat_solve(F, _mat_poly(F, f.den.c, C), N)
    tr = 0
    for i in range(c.deg):
        tr = F.add(tr, N[i][i])
    return tr


def power_sums(c: Poly, upto: int) -> list[int]:
    """p_0 .. p_upto of the roots of monic c by Newton's identities (p_0 = deg c)."""
    _require_monic(c)
    F, k = c.F, c.deg
    a = c.c
    ps = [F.from_int(k)]
    for m in range(1, upto + 1):
        s = 0
        for i in range(1, min(m, k + 1)):
            # c_{k-i} * p_{m-i}
            s = F.add(s, F.mul(a[k - i], ps[m - i]))
        if m <= k:
            s = F.add(s, F.mul(F.from_int(m), a[k - m]))
        ps.append(F.neg(s))
    return ps


@lru_cache(maxsize=64)
def power_sum_table(F: FieldCtx, n: int, upto: int) -> np.ndarray:
    """Array (q**n, upto+1) of root power sums of every monic polynomial of degree n."""
    rows = [power_sums(P, upto) for P in enumerate_monic(F, n)]
    return np.array(rows, dtype=np.int64).reshape(F.q ** n, upto + 1)


@lru_cache(maxsize=32)
def divisor_table(F: FieldCtx, n: int, k: int) -> np.ndarray:
    """d_k of every monic polynomial of degree n, in enumeration order."""
    return np.array([divisor_k(P, k) for P in enumerate_monic(F, n)], dtype=object)


@lru_cache(maxsize=8)
def factor_index(F: FieldCtx, n: int):
    """Sieve factorizations of all monics of degree <= n.

    Returns (irr, csr) where ``irr`` lists the monic irreducibles of degree
    <= n and csr[j] = (indptr, ids) gives, for each degree-j monic in
    enumeration order, the irreducible ids of its factors with repetition.
    """
    q = F.q
    irr = []
    first = [np.zeros(1, dtype=np.int64)]
    rest = [np.zeros(1, dtype=np.int64)]
    csr = [(np.zeros(2, dtype=np.int64), np.zeros(0, dtype=np.int64))]
    for j in range(1, n + 1):
        fj = np.full(q ** j, -1, dtype=np.int64)
        rj = np.zeros(q ** j, dtype=np.int64)
        for pid, P in enumerate(irr):
            k = P.deg
            for m_idx, m in enumerate(enumerate_monic(F, j - k)):
                c = monic_index(P * m)
                if fj[c] < 0:
                    fj[c] = pid
                    rj[c] = m_idx
        for idx in np.nonzero(fj < 0)[0]:
            fj[idx] = len(irr)
            rj[idx] = 0
            irr.append(monic_from_index(F, j, int(idx)))
        first.append(fj)
        rest.append(rj)
        indptr = [0]
        ids = []
        for idx in range(q ** j):
            deg, i = j, idx
            while deg > 0:
                pid = int(first[deg][i])
                ids.append(pid)
                i = int(rest[deg][i])
                deg -= irr[pid].deg
            indptr.append(len(ids))
        csr.append((np.array(indptr, dtype=np.int64), np.array(ids, dtype=np.int64)))
    return irr, csr
