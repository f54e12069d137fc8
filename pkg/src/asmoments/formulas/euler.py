"""Euler products over monic irreducibles of F_q[x], truncated with tail bounds.

Every local factor used here depends on a prime P only through deg P (and,
for the odd-family factor, whether Q(x**2) splits).  Products are therefore
taken degree by degree with the exact prime counts, which lets the
truncation go far beyond what enumerating primes would allow.  The tail
estimate sums |log local factor| times the prime count over further degrees
until the terms are negligible, then adds a geometric remainder.  These are
engineering estimates, not proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import log10

import mpmath
import numpy as np

from ..errors import BudgetExceeded, RejectedParameterError
from ..exact import ExactNum
from ..gf import FieldCtx
from ..polyring import Poly, count_irreducibles, irreducibles
from .series import BiSeries, Series, bi_geometric

DEFAULT_DPS = 40
DEFAULT_TRUNC = {3: 12, 9: 6}
TAIL_EPS = mpmath.mpf(10) ** -30
MAX_DEGREE = 2000


def default_truncation(q: int) -> int:
    return DEFAULT_TRUNC.get(q, 8)


@lru_cache(maxsize=None)
def irr_count(q: int, n: int) -> int:
    return count_irreducibles(q, n)


def prime_counts(q: int, N: int) -> tuple:
    """(I_1, ..., I_N): numbers of monic irreducibles by degree."""
    return tuple(irr_count(q, n) for n in range(1, N + 1))


@lru_cache(maxsize=None)
def quad_count(q: int, m: int) -> tuple:
    """(split, inert) counts of monic irreducible Q != x of degree m.

    Q is inert when Q(x**2) is irreducible, i.e. an even irreducible of
    degree 2m; the remaining irreducibles P != x of degree m pair off as
    P(x), +-P(-x) over the split Q of the same degree.
    """
    total = irr_count(q, m) - (1 if m == 1 else 0)
    even = quad_count(q, m // 2)[1] if m % 2 == 0 else 0
    split = (total - even) // 2
    return split, total - split


def quad_counts(q: int, N: int) -> tuple:
    return tuple(quad_count(q, m) for m in range(1, N + 1))


@dataclass
class EulerValue:
    """A truncated Euler product and a bound on |full - truncated|."""

    name: str
    value: mpmath.mpc
    tail_bound: mpmath.mpf
    truncation: int
    params: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "product": self.name,
            "truncation": self.truncation,
            "value": [mpmath.nstr(self.value.real, 15), mpmath.nstr(self.value.imag, 15)],
            "tail_bound": mpmath.nstr(self.tail_bound, 6),
            "params": {k: str(v) for k, v in self.params.items()},
        }


@dataclass(frozen=True)
class EulerProductSpec:
    """local(n, kind) is the factor of one prime of degree n; kinds are
    ("all",) or ("split", "inert")."""

    name: str
    local: object
    kinds: tuple = ("all",)

    def counts(self, q: int, n: int):
        if self.kinds == ("all",):
            return (irr_count(q, n),)
        return quad_count(q, n)


def _factor_terms(spec, q, n, dps):
    """Local factors of degree n with their prime counts.

    A factor of degree n differs from 1 by roughly q**(-c n), and it is
    raised to a power of size q**n, so the working precision grows with n.
    """
    with mpmath.workdps(dps + int(3 * n * log10(q)) + 10):
        return [(+mpmath.mpc(spec.local(n, kind)), c)
                for kind, c in zip(spec.kinds, spec.counts(q, n)) if c]


def evaluate(spec: EulerProductSpec, q: int, N: int | None = None, dps: int = DEFAULT_DPS,
             params=None) -> EulerValue:
    """Product over primes of degree <= N with a tail bound."""
    N = default_truncation(q) if N is None else N
    with mpmath.workdps(dps):
        val = mpmath.mpc(1)
        for n in range(1, N + 1):
            with mpmath.workdps(dps + int(3 * n * log10(q)) + 10):
                for f, c in _factor_terms(spec, q, n, dps):
                    val *= f ** c
        tail = _tail(spec, q, N, dps)
        bound = abs(val) * (mpmath.exp(tail) - 1)
        return EulerValue(spec.name, +val, +bound, N, dict(params or {}))


def _tail(spec, q, N, dps):
    s = mpmath.mpf(0)
    prev = None
    for n in range(N + 1, MAX_DEGREE):
        term = mpmath.mpf(0)
        with mpmath.workdps(dps + int(3 * n * log10(q)) + 10):
            for f, c in _factor_terms(spec, q, n, dps):
                term += c * abs(mpmath.log(f))
        term = +term
        s += term
        if prev is not None and prev > 0 and term < prev and term < TAIL_EPS * max(s, 1):
            r = term / prev
            return s + term * r / (1 - r)
        prev = term
    raise BudgetExceeded(f"tail of {spec.name} did not settle by degree {MAX_DEGREE}")


def _root(p, j):
    return mpmath.expjpi(mpmath.mpf(2 * j) / p)


# the products

def G_spec(q: int, u) -> EulerProductSpec:
    """G(u) = prod_P (1 - u**deg P - |P|(|P|-1) u**(2 deg P))."""
    def local(n, kind):
        Pn = mpmath.mpf(q) ** n
        un = mpmath.mpmathify(u) ** n
        return 1 - un - Pn * (Pn - 1) * un * un
    return EulerProductSpec("G", local)


def E_spec(p: int, q: int, w, u) -> EulerProductSpec:
    """E(w,u): prod_P (1 + w**n (1 - u**(p n)/|P|**(p/2)) (1 - u**n/|P|)) (1 - w**n)."""
    def local(n, kind):
        Pn = mpmath.mpf(q) ** n
        wn = mpmath.mpmathify(w) ** n
        un = mpmath.mpmathify(u) ** n
        return (1 + wn * (1 - un ** p / Pn ** (mpmath.mpf(p) / 2)) * (1 - un / Pn)) * (1 - wn)
    return EulerProductSpec("E", local)


def _F_spec(name, p, q, w, j, mult, expo):
    def local(n, kind):
        Pn = mpmath.mpf(q) ** n
        wn = mpmath.mpmathify(w) ** n
        z = _root(p, -mult * j * n)
        return (1 + wn * (Pn - 1) * (1 - z * Pn ** (-expo))) * (1 - Pn * wn)
    return EulerProductSpec(name, local)


def F1_spec(p, q, w, j=0):
    """F_1(w): prod_P (1 + w**n (|P|-1)(1 - zeta**(-j n)/|P|**(1/2+1/p))) (1 - q**n w**n)."""
    return _F_spec("F1", p, q, w, j, 1, mpmath.mpf(1) / 2 + mpmath.mpf(1) / p)


def F2_spec(p, q, w, j=0):
    """F_2(w): as F_1 with |P|**(-1/p)."""
    return _F_spec("F2", p, q, w, j, 1, mpmath.mpf(1) / p)


def F3_spec(p, q, w, j=0):
    """F_3(w): as F_1 with zeta**(-2 j n)."""
    return _F_spec("F3", p, q, w, j, 2, mpmath.mpf(1) / 2 + mpmath.mpf(1) / p)


def thm11k_spec(p: int, q: int, k: int) -> EulerProductSpec:
    """prod_P (1/p) sum_l (1 - zeta**l/sqrt|P|)**(-k)."""
    def local(n, kind):
        X = mpmath.mpf(q) ** (-mpmath.mpf(n) / 2)
        return sum((1 - _root(p, l) * X) ** (-k) for l in range(p)) / p
    return EulerProductSpec("thm11k", local)


# odd-family second moment: local factors of H(u, v)

def a_q_printed(p, U, V):
    """A_Q as printed, with U = u**(2 deg Q), V = v**(p deg Q)."""
    W = V * V
    first = (1 - V + p * V) / (1 - V) ** 2
    return first - U * (p * U * W - U * W - p * W + 2 * W + U - 2) / ((U - 1) ** 2 * (W - 1) ** 2)


def b_q_printed(p, U, V):
    """B_Q as printed."""
    W = V * V
    U2 = U * U
    poly = (-2 * p * p * U * W + p * p * U2 * W + p * p * W - 6 * p * U * V + 6 * U * V
            + 6 * p * U * W - 3 * U * W + 2 * p * U2 * V - 2 * U2 * V - 2 * p * U2 * W + U2 * W
            + 4 * p * V - 8 * V - 4 * p * W + 4 * W - 3 * U + U2 + 4)
    return (1 - V + p * V) / (1 - V) ** 2 + U * poly / ((1 - V + p * V) * (1 - V) ** 2 * (1 - U) ** 3)


def a_q_series_form(p, U, V):
    """A_Q summed from its defining series: the prime over an inert Q has
    degree 2 deg Q, so its v-variable is V**2."""
    W = V * V
    return 1 / ((1 - U) ** 2 * (1 - W)) + p * W / ((1 - W) ** 2 * (1 - U))


def b_q_series_form(p, U, V):
    """B_Q summed from its defining series: two primes of degree deg Q."""
    c = p * V / (1 - V) ** 2
    return ((1 + U) / ((1 - U) ** 3 * (1 - V) ** 2) + 2 * c / ((1 - U) ** 2 * (1 - V))
            + c * c / (1 - U))


H_VARIANTS = {
    "printed": (a_q_printed, b_q_printed),
    "series": (a_q_series_form, b_q_series_form),
}


def H_spec(p: int, q: int, u, v, variant: str = "printed") -> EulerProductSpec:
    """H(u,v) = prod_inert C_Q prod_split D_Q with C_Q = (1-U)**3 (1+U) A_Q, D_Q = (1-U)**4 B_Q."""
    if variant not in H_VARIANTS:
        raise RejectedParameterError(f"unknown H variant {variant!r}")
    aq, bq = H_VARIANTS[variant]

    def local(n, kind):
        U = mpmath.mpmathify(u) ** (2 * n)
        V = mpmath.mpmathify(v) ** (p * n)
        if kind == "inert":
            return (1 - U) ** 3 * (1 + U) * aq(p, U, V)
        return (1 - U) ** 4 * bq(p, U, V)
    return EulerProductSpec(f"H[{variant}]", local, ("split", "inert"))


def L_chi_x_spec(u) -> EulerProductSpec:
    """L(u, chi_x) = prod_inert (1 + u**n)**-1 prod_split (1 - u**n)**-1."""
    def local(n, kind):
        un = mpmath.mpmathify(u) ** n
        return 1 / (1 + un) if kind == "inert" else 1 / (1 - un)
    return EulerProductSpec("L_chi_x", local, ("split", "inert"))


PRODUCTS = ("G", "E", "F1", "F2", "F3", "H", "thm11k")


def euler_eval(product: str, p: int, q: int, at, N: int | None = None, k: int = 2, j: int = 0,
               variant: str = "printed") -> EulerValue:
    """Dispatch used by the CLI: ``at`` is a tuple of point coordinates."""
    at = tuple(at)
    if product == "G":
        spec = G_spec(q, at[0])
    elif product == "E":
        spec = E_spec(p, q, at[0], at[1])
    elif product in ("F1", "F2", "F3"):
        spec = {"F1": F1_spec, "F2": F2_spec, "F3": F3_spec}[product](p, q, at[0], j)
    elif product == "H":
        spec = H_spec(p, q, at[0], at[1], variant)
    elif product == "thm11k":
        spec = thm11k_spec(p, q, k)
    else:
        raise RejectedParameterError(f"unknown product {product!r}")
    return evaluate(spec, q, N, params={"p": p, "q": q, "at": at, "k": k, "j": j})


# exact truncated series versions, used to check local factors against
# enumeration

def G_series(q: int, N: int) -> Series:
    """G(u) as an exact integer series mod u**(N+1)."""
    out = Series([1], N + 1)
    for n, c in enumerate(prime_counts(q, N), start=1):
        Pn = q ** n
        local = Series.monomial(1, 0, N + 1) - Series.monomial(1, n, N + 1) \
            - Series.monomial(Pn * (Pn - 1), 2 * n, N + 1)
        out = out * local ** c
    return out


def E_series(F: FieldCtx, u: ExactNum, N: int, enumerate_primes: bool = False) -> Series:
    """E(w, u) in w, exact in R, from prime counts or by enumerating primes."""
    R = u.R
    p, q = F.p, F.q
    one, zero = R.one(), R.zero()
    out = Series([one], N + 1, zero)
    for n in range(1, N + 1):
        Pn = q ** n
        a = (one - u ** (p * n) * R.q_pow(Fraction(-p * n, 2))) * (one - u ** n * Fraction(1, Pn))
        local = Series([one], N + 1, zero) + Series.monomial(a, n, N + 1, zero)
        local = local * (Series([one], N + 1, zero) - Series.monomial(one, n, N + 1, zero))
        c = len(irreducibles(F, n)) if enumerate_primes else irr_count(q, n)
        out = out * local ** c
    return out


def orbit_split_counts(q: int, n: int) -> tuple:
    """(split, inert) for degree n from Frobenius orbits on F_(q**n)^* = <g>.

    g**i has degree n iff its orbit under i -> q i mod q**n - 1 has n
    elements; its minimal polynomial Q is split iff g**i is a square, i.e.
    i is even.  Independent of the prime-count recursion behind quad_count.
    """
    if q % 2 == 0:
        raise RejectedParameterError("q must be odd")
    M = q ** n - 1
    if M > 10 ** 8:
        raise BudgetExceeded(f"orbit route needs {M} exponents", M, 10 ** 8, 0)
    i = np.arange(M, dtype=np.int64)
    full = np.ones(M, dtype=bool)
    for ell in sorted({ell for ell in range(2, n + 1) if n % ell == 0 and all(ell % r for r in range(2, ell))}):
        # orbit size divides n // ell iff g**i lies in F_(q**(n//ell))
        full &= (i * (q ** (n // ell) - 1)) % M != 0
    even = int(np.count_nonzero(full & (i % 2 == 0)))
    odd = int(np.count_nonzero(full)) - even
    return even // n, odd // n


def L_chi_x_series(F: FieldCtx, N: int, route: str = "primes") -> Series:
    """prod over Q != x of (1 -+ u**deg Q)**-1 as an exact series; should be 1.

    ``route`` picks the split/inert counts: "counts" (quad_count recursion),
    "primes" (enumerate irreducibles, test x for a square) or "orbits"
    (orbit_split_counts).
    """
    from ..chars import quad_split_type
    out = Series([1], N + 1)
    for n in range(1, N + 1):
        if route == "primes":
            types = [quad_split_type(Q) for Q in irreducibles(F, n) if Q != Poly.x(F)]
            split, inert = types.count("split"), types.count("inert")
        elif route == "orbits":
            split, inert = orbit_split_counts(F.q, n)
        elif route == "counts":
            split, inert = quad_count(F.q, n)
        else:
            raise RejectedParameterError(f"unknown route {route!r}")
        plus = Series.geometric(-1, n, N + 1)
        minus = Series.geometric(1, n, N + 1)
        out = out * plus ** inert * minus ** split
    return out


def _bi_inverse(s: BiSeries) -> BiSeries:
    """1/s for s = c + (higher terms) with c a nonzero scalar."""
    c = s.coeff(0, 0)
    rest = BiSeries({k: v for k, v in s.c.items() if k != (0, 0)}, s.T) * (-Fraction(1) / c)
    out = BiSeries.one(s.T)
    term = BiSeries.one(s.T)
    for _ in range(s.T + 1):
        term = term * rest
        if not term.c:
            break
        out = out + term
    return out * (Fraction(1) / c)


def _mono(i, j, T, c=1):
    return BiSeries({(i, j): c}, T)


def H_local_bi(p: int, n: int, kind: str, T: int, variant: str = "printed") -> BiSeries:
    """C_Q or D_Q for deg Q = n as a series in (u, v), truncated at total degree T."""
    aq, bq = H_VARIANTS[variant]
    U = _mono(2 * n, 0, T)
    V = _mono(0, p * n, T)
    one = BiSeries.one(T)

    class _B:
        """Thin wrapper so the rational local formulas run on BiSeries."""

        __slots__ = ("s",)

        def __init__(self, s):
            self.s = s

        def _w(self, o):
            if isinstance(o, _B):
                return o.s
            return one * o

        def __add__(self, o):
            return _B(self.s + self._w(o))

        __radd__ = __add__

        def __sub__(self, o):
            return _B(self.s - self._w(o))

        def __rsub__(self, o):
            return _B(self._w(o) - self.s)

        def __mul__(self, o):
            return _B(self.s * self._w(o))

        __rmul__ = __mul__

        def __neg__(self):
            return _B(self.s * (-1))

        def __pow__(self, k):
            out = one
            for _ in range(k):
                out = out * self.s
            return _B(out)

        def __truediv__(self, o):
            return _B(self.s * _bi_inverse(self._w(o)))

        def __rtruediv__(self, o):
            return _B(self._w(o) * _bi_inverse(self.s))

    Ub, Vb = _B(U), _B(V)
    if kind == "inert":
        return ((1 - Ub) ** 3 * (1 + Ub) * aq(p, Ub, Vb)).s
    return ((1 - Ub) ** 4 * bq(p, Ub, Vb)).s


def H_bi(F: FieldCtx, T: int, variant: str = "printed") -> BiSeries:
    """H(u, v) truncated at total degree T, from the split/inert counts."""
    p, q = F.p, F.q
    out = BiSeries.one(T)
    nmax = T // 2
    for n in range(1, nmax + 1):
        split, inert = quad_count(q, n)
        for kind, c in (("split", split), ("inert", inert)):
            if c:
                loc = H_local_bi(p, n, kind, T, variant)
                for _ in range(c):
                    out = out * loc
    return out


def G_uv_from_H(F: FieldCtx, T: int, variant: str = "printed") -> BiSeries:
    """Z(u**2)**3 L(u**2, chi_x) (1 - u**2)**3 H(u, v), with L(u, chi_x) = 1."""
    q = F.q
    z = bi_geometric(q, 2, 0, T)
    one_minus = BiSeries({(0, 0): 1, (2, 0): -1}, T)
    pre = z * z * z * one_minus * one_minus * one_minus
    return pre * H_bi(F, T, variant)


__all__ = [
    "EulerValue", "EulerProductSpec", "evaluate", "irr_count", "prime_counts", "quad_count", "quad_counts", "default_truncation",
    "G_spec", "E_spec", "F1_spec", "F2_spec", "F3_spec", "thm11k_spec", "H_spec", "L_chi_x_spec",
    "a_q_printed", "b_q_printed", "a_q_series_form", "b_q_series_form", "H_VARIANTS", "PRODUCTS",
    "euler_eval", "G_series", "E_series", "L_chi_x_series", "orbit_split_counts", "H_local_bi", "H_bi", "G_uv_from_H",
]
