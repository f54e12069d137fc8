"""Artin-Schreier L-functions L(u, f, psi).

Throughout, L(u, f, psi) is the complete L-function of y**p - y = f(x)
for the character psi(c) = zeta_p**c: when f is regular at infinity the
rational point there contributes psi(tr f(infinity)) to every S_n.  With
this convention deg L = 2g/(p-1) for every curve, L is the factor of the
numerator of the zeta function, and the functional equation holds in the
form a_j = eps * q**(j - D/2) * conj(a_{D-j}).

Two independent routes compute L: exponentiating point-count sums
(:func:`l_from_point_counts`, batched over members sharing a denominator)
and summing psi_f over monic polynomials (:func:`l_from_char_sums`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import kernels
from .errors import (
    FunctionalEquationViolation,
    InternalConsistencyError,
    NumericalFailure,
    RejectedParameterError,
    UnsupportedRamificationError,
)
from .exact import DEFAULT_PRECISION, CycInt, ExactNum, radical_field
from .gf import TABLE_LIMIT, FieldCtx, embed_code, extension, field_tables
from .polyring import (
    Poly,
    RatFn,
    divisor_k,
    divisor_table,
    enumerate_monic,
    factorize,
    gcd,
    is_squarefree,
    power_sum_table,
    root_sum_eval,
)

FAMILIES = ("polynomial", "odd", "ordinary")


# curves

@dataclass(frozen=True)
class CurveParams:
    """A rational function f over F_q, with an optional family tag and d."""

    f: RatFn
    family: str | None = None
    d: int | None = None

    @property
    def F(self) -> FieldCtx:
        return self.f.F

    @property
    def p(self) -> int:
        return self.f.F.p

    @property
    def q(self) -> int:
        return self.f.F.q

    @property
    def num(self) -> Poly:
        return self.f.num

    @property
    def den(self) -> Poly:
        return self.f.den

    def is_polynomial(self) -> bool:
        return self.f.is_polynomial()

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json(),
                "family": self.family, "d": self.d}


def _as_poly(F, x):
    if x is None:
        return Poly(F, (1,))
    if isinstance(x, Poly):
        return x
    return Poly(F, x)


def make_curve(F: FieldCtx, num, den=None, family: str | None = None, d: int | None = None,
               check: bool = True) -> CurveParams:
    """Build a curve; with a family tag the membership conditions are enforced."""
    h, g = _as_poly(F, num), _as_poly(F, den)
    if family is not None and family not in FAMILIES:
        raise RejectedParameterError(f"unknown family {family!r}")
    if family is not None and check:
        d = _check_family(h, g, family, d)
    return CurveParams(RatFn(h, g), family, d)


def _check_family(h: Poly, g: Poly, family: str, d):
    p = h.F.p
    if family in ("polynomial", "odd"):
        if g.deg != 0 or g.c != (1,):
            raise RejectedParameterError("polynomial family members have denominator 1")
        dd = h.deg
        if d is not None and d != dd:
            raise RejectedParameterError(f"degree {dd} does not match d={d}")
        if dd < 1 or dd % p == 0:
            raise RejectedParameterError("polynomial family needs deg f prime to p")
        if any(h.coeff(j) for j in range(p, dd + 1, p)):
            raise RejectedParameterError("coefficients at multiples of p must vanish")
        if family == "odd":
            if dd % 2 == 0:
                raise RejectedParameterError("odd family needs d prime to 2p")
            if any(h.coeff(j) for j in range(0, dd + 1, 2)):
                raise RejectedParameterError("odd family members satisfy f(-x) = -f(x)")
        return dd
    # ordinary
    if not g.is_monic() or not is_squarefree(g):
        raise RejectedParameterError("denominator must be monic square-free")
    if h.is_zero() or gcd(h, g).deg > 0:
        raise RejectedParameterError("numerator and denominator must be coprime")
    if d is None:
        d = g.deg if g.deg >= h.deg else h.deg
    if not ((g.deg == d and h.deg <= d) or (g.deg == d - 1 and h.deg == d)) or d < 1:
        raise RejectedParameterError("not in the ordinary family for this d")
    return d


def pole_places(curve: CurveParams):
    """Poles as (degree of the place, order); infinity is a degree-1 place."""
    out = [(P.deg, a) for P, a in factorize(curve.den)] if curve.den.deg > 0 else []
    extra = curve.num.deg - curve.den.deg
    if extra > 0:
        out.append((1, extra))
    return out


def expected_degree(curve: CurveParams) -> int:
    """deg L = 2g/(p-1) = -2 + sum over geometric poles of (order + 1)."""
    places = pole_places(curve)
    if not places:
        raise RejectedParameterError("constant f has no L-polynomial")
    if any(a % curve.p == 0 for _, a in places):
        raise UnsupportedRamificationError("pole order divisible by p")
    return -2 + sum(deg * (a + 1) for deg, a in places)


def genus(curve: CurveParams) -> int:
    return (curve.p - 1) * expected_degree(curve) // 2


# L-polynomials

class LPoly:
    """Polynomial in u with coefficients in Z[zeta_p]."""

    __slots__ = ("p", "q", "coeffs")

    def __init__(self, p: int, q: int, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.p, self.q, self.coeffs = p, q, tuple(cs)

    @classmethod
    def one(cls, p, q):
        return cls(p, q, [CycInt.one(p)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return CycInt.zero(self.p)

    def __eq__(self, other):
        return isinstance(other, LPoly) and (self.p, self.q, self.coeffs) == (other.p, other.q, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.q, self.coeffs))

    def __repr__(self):
        return f"LPoly({[list(c.c) for c in self.coeffs]})"

    def __mul__(self, other):
        out = [CycInt.zero(self.p)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return LPoly(self.p, self.q, out)

    def conj(self):
        return LPoly(self.p, self.q, [a.conj() for a in self.coeffs])

    def galois(self, a: int):
        """Coefficients under zeta -> zeta**a, i.e. the L-function for psi**a."""
        return LPoly(self.p, self.q, [c.galois(a) for c in self.coeffs])

    def twist(self, c: CycInt):
        """u -> c*u."""
        out, pw = [], CycInt.one(self.p)
        for a in self.coeffs:
            out.append(a * pw)
            pw = pw * c
        return LPoly(self.p, self.q, out)

    def value(self, u: ExactNum) -> ExactNum:
        R = radical_field(self.p, self.q)
        acc = R.zero()
        for a in reversed(self.coeffs):
            acc = acc * u + R.from_cyc(a)
        return acc

    def at_inv_sqrt_q(self) -> ExactNum:
        """L(q**-1/2) in R."""
        return series_at_inv_sqrt_q(self.p, self.q, self.coeffs)

    def complex_coeffs(self, precision=DEFAULT_PRECISION):
        return [a.to_complex(precision) for a in self.coeffs]

    def to_json(self):
        return [list(a.c) for a in self.coeffs]


def series_at_inv_sqrt_q(p: int, q: int, coeffs) -> ExactNum:
    """sum_j c_j q**(-j/2) for CycInt c_j, as A + B*sqrt(q) with A, B in Q(zeta_p)."""
    R = radical_field(p, q)
    even = [0] * (p - 1)
    odd = [0] * (p - 1)
    top = len(coeffs)
    den = q ** ((top + 1) // 2)
    for j, a in enumerate(coeffs):
        if a.is_zero():
            continue
        if j % 2 == 0:
            s, tgt = den // q ** (j // 2), even
        else:
            s, tgt = den // q ** ((j + 1) // 2), odd
        for i, x in enumerate(a.c):
            tgt[i] += s * x
    A = R.from_cyc(CycInt(p, even)) * Fraction(1, den)
    if not any(odd):
        return A
    B = R.from_cyc(CycInt(p, odd)) * Fraction(1, den)
    return A + B * R.sqrt_q()


# point counts

@lru_cache(maxsize=16)
def _orbit_reps(M: int, q: int, n: int):
    """Representatives of k -> k*q (mod M) and their orbit sizes."""
    k = np.arange(M, dtype=np.int64)
    cur = k.copy()
    mn = k.copy()
    size = np.full(M, n, dtype=np.int64)
    for j in range(1, n):
        cur = cur * q % M
        np.minimum(mn, cur, out=mn)
        size[(cur == k) & (size == n)] = j
    reps = np.nonzero(mn == k)[0]
    return reps, size[reps]


def _batch_counts(F: FieldCtx, n: int, den: Poly, nums):
    """S_n for every f = h/den, h in ``nums`` (coefficient tuples), as (m, p) histograms."""
    p, e, q = F.p, F.e, F.q
    tabs = field_tables(p, e * n)
    big, M = tabs.ctx, tabs.M
    E = big.e
    reps, w = _orbit_reps(M, q, n)
    basis_logs = [int(tabs.log[embed_code(F, p ** s, big)]) for s in range(e)]
    H = max(len(h) for h in nums)
    pw = p ** np.arange(E, dtype=np.int64)

    # log g(alpha) on the orbit representatives (alpha = gen**k)
    if den.deg == 0:
        lg = np.zeros(len(reps), dtype=np.int64)
        alive = np.ones(len(reps), dtype=bool)
        g0 = 1
    else:
        acc = np.zeros((len(reps), E), dtype=np.int64)
        for j, c in enumerate(den.c):
            if c:
                lc = int(tabs.log[embed_code(F, c, big)])
                acc += tabs.digit_matrix(tabs.exp[(lc + j * reps) % M])
        codes = (acc % p) @ pw
        alive = codes != 0
        lg = np.where(alive, tabs.log[codes], 0)
        g0 = den.c[0]

    cols = H * e
    T = np.zeros((len(reps) + 1, cols), dtype=np.int64)
    for i in range(H):
        base = (i * reps - lg) % M
        for s in range(e):
            T[:-1, i * e + s] = tabs.trace[(basis_logs[s] + base) % M]
    weights = np.append(np.where(alive, w, 0), 0)
    if g0:
        # alpha = 0: only the constant term survives
        l0 = int(tabs.log[embed_code(F, g0, big)])
        for s in range(e):
            T[-1, s] = tabs.trace[(basis_logs[s] - l0) % M]
        weights[-1] = 1

    A = np.zeros((len(nums), cols), dtype=np.int64)
    for m, h in enumerate(nums):
        for i, c in enumerate(h):
            if c:
                A[m, i * e:(i + 1) * e] = F.digits(c)
    hist = kernels.residue_histogram(A, T, weights, p)

    # rational point at infinity when f is regular there
    for m, h in enumerate(nums):
        dh = len(h) - 1
        if dh <= den.deg:
            finf = h[den.deg] if dh == den.deg else 0
            hist[m, (n * F.trace(finf)) % p] += 1
    return hist


def point_count_sums(curves, nmax: int):
    """S_1..S_nmax (CycInt) for each curve, batched by denominator."""
    if not curves:
        return []
    out = [None] * len(curves)
    groups = {}
    for idx, cv in enumerate(curves):
        groups.setdefault(cv.den.c, []).append(idx)
    F = curves[0].F
    for denc, idxs in groups.items():
        den = Poly(F, denc)
        nums = [curves[i].num.c for i in idxs]
        per = [[] for _ in idxs]
        for n in range(1, nmax + 1):
            hist = _batch_counts(F, n, den, nums)
            for r, row in enumerate(hist):
                per[r].append(CycInt.from_counts(F.p, row))
        for r, i in enumerate(idxs):
            out[i] = per[r]
    return out


def point_count_sum(curve: CurveParams, n: int) -> CycInt:
    """S_n(f, psi), complete (including infinity when f is regular there)."""
    if n < 1:
        raise RejectedParameterError("n must be positive")
    hist = _batch_counts(curve.F, n, curve.den, [curve.num.c])
    return CycInt.from_counts(curve.p, hist[0])


def point_count_sum_naive(curve: CurveParams, n: int) -> CycInt:
    """Direct summation over F_{q^n}; an oracle for small fields."""
    F = curve.F
    big = extension(F, n)
    num = [embed_code(F, c, big) for c in curve.num.c]
    den = [embed_code(F, c, big) for c in curve.den.c]

    def ev(cs, x):
        acc = 0
        for c in reversed(cs):
            acc = big.add(big.mul(acc, x), c)
        return acc

    counts = [0] * F.p
    for a in range(big.q):
        g = ev(den, a)
        if g == 0:
            continue
        counts[big.trace(big.mul(ev(num, a), big.inv(g)))] += 1
    finf = curve.f.at_infinity()
    if finf is not None:
        counts[(n * F.trace(finf)) % F.p] += 1
    return CycInt.from_counts(F.p, counts)


def _newton(S, upto: int, p: int):
    """Coefficients a_0..a_upto of exp(sum S_n u**n / n), asserting integrality."""
    a = [CycInt.one(p)]
    for k in range(1, upto + 1):
        acc = CycInt.zero(p)
        for i in range(1, k + 1):
            acc = acc + S[i - 1] * a[k - i]
        try:
            a.append(acc.exact_divide(k))
        except ArithmeticError:
            raise InternalConsistencyError(f"coefficient a_{k} is not integral") from None
    return a


def l_functions(curves, extra: int = 2):
    """L-polynomials of many curves from point counts.

    ``extra`` further coefficients are computed and asserted to vanish.
    """
    if not curves:
        return []
    degs = [expected_degree(cv) for cv in curves]
    nmax = max(degs) + extra
    sums = point_count_sums(curves, nmax)
    out = []
    for cv, D, S in zip(curves, degs, sums):
        a = _newton(S, D + extra, cv.p)
        if any(not x.is_zero() for x in a[D + 1:]):
            raise InternalConsistencyError(f"L has degree above {D} for {cv.f}")
        if a[D].is_zero():
            raise InternalConsistencyError(f"L has degree below {D} for {cv.f}")
        out.append(LPoly(cv.p, cv.q, a[:D + 1]))
    return out


def _as_cyc(x: ExactNum, p: int):
    """x as a CycInt when it lies in Z[zeta_p], else None."""
    pm = p - 1
    if x.den != 1 or any(x.num[pm:]):
        return None
    return CycInt(p, x.num[:pm])


def _fe_complete(a, D, p, q):
    """Fill a_{h+1}..a_D from a_0..a_h via the functional equation.

    The root number is solved from the first usable index and every other
    overlapping index is checked.  Returns None when a_0..a_h do not
    determine it.
    """
    R = radical_field(p, q)
    h = len(a) - 1
    eps = None
    for j in range(max(D - h, 0), h + 1):
        if not a[D - j].is_zero():
            eps = R.from_cyc(a[j]) / (R.from_cyc(a[D - j].conj()) * R.t_pow(p * (2 * j - D)))
            break
    if eps is None or eps * eps.conj() != R.one():
        return None
    full = list(a[:D + 1]) + [None] * max(0, D - h)
    for j in range(max(D - h, 0), D + 1):
        val = eps * R.from_cyc(a[D - j].conj()) * R.t_pow(p * (2 * j - D))
        c = _as_cyc(val, p)
        if c is None:
            return None
        if j <= h:
            if c != a[j]:
                raise FunctionalEquationViolation(f"coefficient {j} disagrees with the functional equation")
        else:
            full[j] = c
    return full


def l_functions_fe(curves, margin: int = 1):
    """L-polynomials from S_1..S_{D//2+margin} plus the functional equation.

    Curves whose low coefficients do not pin down the root number fall back
    to :func:`l_functions`.
    """
    if not curves:
        return []
    degs = [expected_degree(cv) for cv in curves]
    nmax = max(D // 2 + margin for D in degs)
    sums = point_count_sums(curves, nmax)
    out = []
    for cv, D, S in zip(curves, degs, sums):
        h = min(D // 2 + margin, D)
        a = _newton(S, h, cv.p)
        full = _fe_complete(a, D, cv.p, cv.q) if D > 0 else a[:1]
        if full is None:
            out.append(l_functions([cv])[0])
            continue
        if full[D].is_zero():
            raise InternalConsistencyError(f"L has degree below {D} for {cv.f}")
        out.append(LPoly(cv.p, cv.q, full))
    return out


def l_from_point_counts(curve: CurveParams, extra: int = 2) -> LPoly:
    return l_functions([curve], extra)[0]


# character sums

def _const_coeff_zero(q: int, j: int):
    """Mask of degree-j monics (enumeration order) divisible by x."""
    idx = np.arange(q ** j, dtype=np.int64)
    return idx // q ** (j - 1) == 0


def psi_f_sums(curve: CurveParams, upto: int, k: int | None = None, zero_at_x: bool = False):
    """[sum_{F in M_j} w(F) psi_f(F) for j = 0..upto] as CycInt.

    psi_f(F) = psi(tr sum_{F(alpha)=0} f(alpha)), and 0 when F shares a
    factor with the denominator (or with x, if ``zero_at_x``).  The weight w
    is d_k when ``k`` is given, else 1.
    """
    F, p = curve.F, curve.p
    out = [CycInt.one(p)]
    fast = curve.is_polynomial() and F.q <= TABLE_LIMIT
    if fast:
        add_t, mul_t, _, tr_t = F.np_tables()
        hc = curve.num.c
    for j in range(1, upto + 1):
        if fast:
            P = power_sum_table(F, j, max(len(hc) - 1, 0))
            v = np.zeros(F.q ** j, dtype=np.int64)
            for i, c in enumerate(hc):
                if c:
                    v = add_t[v, mul_t[c, P[:, i]]]
            res = tr_t[v]
            wt = np.ones(len(res), dtype=np.int64) if k is None else \
                np.asarray(divisor_table(F, j, k), dtype=np.int64)
            if zero_at_x:
                wt = np.where(_const_coeff_zero(F.q, j), 0, wt)
            counts = np.bincount(res, weights=wt, minlength=p)
            out.append(CycInt.from_counts(p, np.rint(counts).astype(np.int64)))
            continue
        counts = [0] * p
        for c in enumerate_monic(F, j):
            if zero_at_x and c.c[0] == 0:
                continue
            if curve.den.deg > 0 and gcd(c, curve.den).deg > 0:
                continue
            wgt = 1 if k is None else divisor_k(c, k)
            counts[F.trace(root_sum_eval(curve.f, c))] += wgt
        out.append(CycInt.from_counts(p, counts))
    return out


def l_from_char_sums(curve: CurveParams, extra: int = 0) -> LPoly:
    """L from a_j = sum_{F in M_j} psi_f(F), with the infinity factor removed.

    The affine sums give the Euler product over finite primes; when f is
    regular at infinity the complete L is that series divided by
    (1 - psi(tr f(infinity)) u).
    """
    D = expected_degree(curve)
    finf = curve.f.at_infinity()
    upto = D + extra + (1 if finf is not None else 0)
    b = psi_f_sums(curve, upto)
    p = curve.p
    if finf is None:
        a = b
    else:
        delta = CycInt.zeta_power(p, curve.F.trace(finf))
        a = [b[0]]
        for j in range(1, upto + 1):
            a.append(b[j] + delta * a[j - 1])
    if any(not x.is_zero() for x in a[D + 1:]):
        raise InternalConsistencyError("character-sum route exceeds the expected degree")
    return LPoly(p, curve.q, a[:D + 1])


# analytic checks

def functional_equation_check(L: LPoly, curve: CurveParams | None = None, raise_on_failure: bool = True):
    """(eps, ok) for a_j = eps * q**(j - D/2) * conj(a_{D-j}).

    D is the expected degree of ``curve`` when given, else deg L.
    """
    R = radical_field(L.p, L.q)
    D = expected_degree(curve) if curve is not None else L.degree
    if D == 0:
        return R.one(), L.degree == 0
    eps = R.from_cyc(L[D]) * R.t_pow(-L.p * D)
    ok = (eps * eps.conj()) == R.one()
    for j in range(D + 1):
        if not ok:
            break
        rhs = eps * R.from_cyc(L[D - j].conj()) * R.t_pow(L.p * (2 * j - D))
        ok = R.from_cyc(L[j]) == rhs
    if not ok and raise_on_failure:
        raise FunctionalEquationViolation(f"functional equation fails for {L}")
    return eps, ok


def inverse_roots(L: LPoly, precision: int = DEFAULT_PRECISION):
    """Roots of the complex embedding of L (as mpmath numbers)."""
    if L.degree < 1:
        return []
    cs = L.complex_coeffs(precision)
    with mpmath.workprec(precision):
        try:
            return mpmath.polyroots(list(reversed(cs)), maxsteps=400, extraprec=2 * precision)
        except mpmath.libmp.NoConvergence as exc:
            raise NumericalFailure(f"root finder did not converge: {exc}") from None


def rh_check(L: LPoly, tol: float = 1e-8, precision: int = DEFAULT_PRECISION) -> bool:
    """All roots of L lie on |u| = q**-1/2 within ``tol``."""
    target = mpmath.mpf(L.q) ** mpmath.mpf(-0.5)
    return all(abs(abs(r) - target) < tol for r in inverse_roots(L, precision))


# approximate functional equations

def afe_absolute_identity(curve: CurveParams, k: int, L: LPoly | None = None) -> bool:
    """|L(q**-1/2)|**(2k) against the two double sums over deg FH <= k(d-1) and k(d-1)-1."""
    if not curve.is_polynomial():
        raise RejectedParameterError("polynomial family only")
    L = L if L is not None else l_from_point_counts(curve)
    v = L.at_inv_sqrt_q()
    lhs = (v * v.conj()) ** k
    N = k * (curve.num.deg - 1)
    A = psi_f_sums(curve, N, k=k)
    c = []
    for n in range(N + 1):
        acc = CycInt.zero(curve.p)
        for m in range(n + 1):
            acc = acc + A[m] * A[n - m].conj()
        c.append(acc * (2 if n <= N - 1 else 1))
    return lhs == series_at_inv_sqrt_q(curve.p, curve.q, c)


def afe_odd_identity(curve: CurveParams, L: LPoly | None = None) -> bool:
    """L(q**-1/2, chi_f)**2 against the three-sum expansion for odd f."""
    if curve.family != "odd" and not curve.is_polynomial():
        raise RejectedParameterError("odd polynomial family only")
    p, q = curve.p, curve.q
    d = curve.num.deg
    R = radical_field(p, q)
    L = L if L is not None else l_from_point_counts(curve)
    s = R.sqrt_q()
    inv_s = s * Fraction(1, q)
    chi_val = (R.one() - inv_s) * L.at_inv_sqrt_q()
    lhs = chi_val * chi_val
    B = psi_f_sums(curve, d - 1, k=2, zero_at_x=True)
    zero = CycInt.zero(p)
    first = series_at_inv_sqrt_q(p, q, [x * 2 for x in B[:d - 1]])
    second = series_at_inv_sqrt_q(p, q, [zero] * (d - 1) + [B[d - 1]]) * (R.one() - inv_s) ** 2
    third = R.zero()
    for j in range(d - 1):
        w = (inv_s - s) * (d - j) - 2
        third = third + w * R.from_cyc(B[j])
    third = third * R.q_pow(Fraction(-d, 2))
    return lhs == first + second + third


def lfun_summary(curve: CurveParams, tol: float = 1e-8) -> dict:
    """JSON-ready summary: coefficients, root number, RH verdict, genus."""
    L = l_from_point_counts(curve)
    eps, ok = functional_equation_check(L, curve, raise_on_failure=False)
    return {
        "curve": curve.to_json(),
        "coeffs": L.to_json(),
        "degree": L.degree,
        "epsilon": eps.to_json(),
        "fe_ok": ok,
        "rh_ok": rh_check(L, tol),
        "genus": genus(curve),
    }
