"""Dirichlet characters over F_q[x] and the characters chi_f attached to curves.

A character is a completely multiplicative function on F_q[x] with a
modulus Q; it is stored either as a table on (F_q[x]/Q)^x or lazily via a
value function.  Values are :class:`~asmoments.exact.CycInt`.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
from functools import lru_cache

from .errors import (
    ASMomentsError,
    CorrespondenceViolation,
    InternalConsistencyError,
    RejectedParameterError,
    TheoryViolation,
)
from .exact import CycInt
from .gf import FieldCtx
from .lfun import (
    CurveParams,
    LPoly,
    l_from_point_counts,
    l_functions,
    make_curve,
    psi_f_sums,
)
from .polyring import (
    Poly,
    RatFn,
    enumerate_monic,
    euler_phi,
    factor_index,
    factorize,
    gcd,
    invmod,
    is_irreducible,
    powmod,
    power_sums,
    root_sum_eval,
)


# residues

def _key(F, c: Poly, n: int):
    return c.c + (0,) * (n - len(c.c))


@lru_cache(maxsize=64)
def _units(F: FieldCtx, Qc: tuple):
    """Units of F_q[x]/Q as Polys of degree < deg Q."""
    Q = Poly(F, Qc)
    n = Q.deg
    out = []
    for cs in itertools.product(range(F.q), repeat=n):
        c = Poly(F, cs)
        if not c.is_zero() and gcd(c, Q).deg == 0:
            out.append(c)
    return out


def units(Q: Poly):
    return _units(Q.F, Q.c)


def _as_monic(c: Poly):
    return c if c.is_monic() else c.monic()


class DirichletChar:
    """Completely multiplicative function, zero off the units mod ``modulus``.

    ``table`` maps residue keys to values; ``func`` evaluates lazily (used
    for the curve characters, which need not be periodic).
    """

    def __init__(self, modulus: Poly, table=None, func=None, label=None):
        if table is None and func is None:
            raise RejectedParameterError("a character needs a table or a value function")
        self.modulus = modulus
        self.table = table
        self.func = func
        self.label = label
        self.p = modulus.F.p

    def __repr__(self):
        return f"DirichletChar(mod {list(self.modulus.c)}, {self.label})"

    def __call__(self, c: Poly) -> CycInt:
        if c.is_zero() or gcd(c, self.modulus).deg > 0:
            return CycInt.zero(self.p)
        if self.func is not None:
            return self.func(c)
        return self.table[_key(c.F, c % self.modulus, self.modulus.deg)]

    def tabulate(self):
        """The table on units mod the modulus (evaluating lazily if needed)."""
        if self.table is None:
            n = self.modulus.deg
            self.table = {_key(u.F, u, n): self.func(u) for u in units(self.modulus)}
        return self.table

    def is_principal(self) -> bool:
        one = CycInt.one(self.p)
        return all(v == one for v in self.tabulate().values())

    def is_even(self) -> bool:
        F = self.modulus.F
        one = CycInt.one(self.p)
        return all(self(Poly.const(F, a)) == one for a in range(1, F.q))

    def trivial_on(self, Q1: Poly) -> bool:
        """chi(g) = 1 for every unit g = 1 mod Q1."""
        one = CycInt.one(self.p)
        for key, v in self.tabulate().items():
            if v != one and (Poly(self.modulus.F, key) - Poly.const(self.modulus.F, 1)) % Q1 == Poly(self.modulus.F):
                return False
        return True

    def is_primitive(self) -> bool:
        """No proper divisor Q1 of the modulus with chi trivial on 1 + Q1*(...)."""
        Q = self.modulus
        for P, _ in factorize(Q):
            if self.trivial_on(Q // P):
                return False
        return True

    def fingerprint(self):
        tab = self.tabulate()
        return tuple(tab[k].c for k in sorted(tab))


# characters attached to curves

def _rat(f):
    if isinstance(f, CurveParams):
        return f.f
    if isinstance(f, Poly):
        return RatFn(f)
    return f


def chi_f_polynomial(f, c: Poly) -> CycInt:
    """psi(tr sum_{c(alpha)=0} f(alpha)), and 0 when x | c."""
    fr = _rat(f)
    F = fr.F
    if c.is_zero() or c.coeff(0) == 0:
        return CycInt.zero(F.p)
    c = _as_monic(c)
    if c.deg == 0:
        return CycInt.one(F.p)
    return CycInt.zeta_power(F.p, F.trace(root_sum_eval(fr, c)))


def chi_f_ordinary(f, c: Poly) -> CycInt:
    """psi(tr sum_{c(alpha)=0} f(alpha)) when (c, g) = 1, else 0."""
    fr = _rat(f)
    F = fr.F
    if c.is_zero() or gcd(c, fr.den).deg > 0:
        return CycInt.zero(F.p)
    c = _as_monic(c)
    if c.deg == 0:
        return CycInt.one(F.p)
    return CycInt.zeta_power(F.p, F.trace(root_sum_eval(fr, c)))


def chi_ax(F: FieldCtx, a: int, c: Poly) -> CycInt:
    """psi(tr(-a * c_{k-1})) for monic c of degree k (sum of a*alpha over roots)."""
    c = _as_monic(c)
    if c.deg == 0:
        return CycInt.one(F.p)
    return CycInt.zeta_power(F.p, F.trace(F.neg(F.mul(a, c.coeff(c.deg - 1)))))


def chi_b(F: FieldCtx, b: int, c: Poly) -> CycInt:
    """The constant b contributes psi(deg(c) * tr b)."""
    return CycInt.zeta_power(F.p, (c.deg * F.trace(b)) % F.p)


def ordinary_decomposition(f):
    """(a, b, f0) with f = a*x + b + f0, deg num(f0) < deg den(f0)."""
    fr = _rat(f)
    F = fr.F
    quo, rem = divmod(fr.num, fr.den)
    if quo.deg > 1:
        raise RejectedParameterError("not an ordinary-family function")
    return quo.coeff(1), quo.coeff(0), RatFn(rem, fr.den)


def chi_f_ordinary_decomposed(f, c: Poly) -> CycInt:
    """chi_{ax} * chi_b * chi_{f0}; must equal :func:`chi_f_ordinary`."""
    fr = _rat(f)
    F = fr.F
    if c.is_zero() or gcd(c, fr.den).deg > 0:
        return CycInt.zero(F.p)
    a, b, f0 = ordinary_decomposition(fr)
    v = chi_ax(F, a, c) * chi_b(F, b, c)
    if f0.num.is_zero():
        return v
    return v * chi_f_ordinary(f0, c)


def x_power(F: FieldCtx, n: int) -> Poly:
    return Poly(F, (0,) * n + (1,))


def reversal(c: Poly) -> Poly:
    """c* = x**deg(c) c(1/x), made monic (roots 1/alpha)."""
    return _as_monic(c.reverse())


def chi_f_reversed(f, c: Poly) -> CycInt:
    """chi_f(c*): the Dirichlet character mod x**(d+1) attached to polynomial f.

    The literal chi_f depends on the top coefficients of c; composing with
    the reversal makes it depend on c mod x**(d+1).  Since f(0) = 0 the two
    agree on sums over monic F with F(0) != 0 (F -> F* permutes that set).
    """
    if c.is_zero() or c.coeff(0) == 0:
        return CycInt.zero(_rat(f).F.p)
    return chi_f_polynomial(f, reversal(c))


def chi_of_curve(curve: CurveParams) -> DirichletChar:
    """chi_f with its modulus: x**(d+1) (reversed form) for polynomial f, g**2 otherwise.

    For ordinary f the character is lazy: the chi_{ax} and chi_b factors are
    not periodic, so it is a Dirichlet character mod g**2 only when f is in H_g.
    """
    F = curve.F
    if curve.is_polynomial():
        Q = x_power(F, curve.num.deg + 1)
        return DirichletChar(Q, func=lambda c: chi_f_reversed(curve, c), label=("chi_f", curve.num.c))
    Q = curve.den * curve.den
    return DirichletChar(Q, func=lambda c: chi_f_ordinary(curve, c),
                         label=("chi_f", curve.num.c, curve.den.c))


def quadratic_char_x(F: FieldCtx) -> DirichletChar:
    """The quadratic character mod x: c -> Legendre symbol of c(0) in F_q."""
    half = (F.q - 1) // 2
    tab = {}
    for a in range(1, F.q):
        tab[(a,)] = CycInt.from_int(F.p, 1 if F.pow(a, half) == 1 else -1)
    return DirichletChar(x_power(F, 1), table=tab, label="chi_x")


# L-functions of characters

def dirichlet_l(chi: DirichletChar, upto: int | None = None) -> LPoly:
    """sum_{F monic} chi(F) u**deg F, truncated at deg Q - 1 (checked to vanish beyond).

    Curve characters are summed through the vectorized root-sum route.
    """
    F = chi.modulus.F
    p = F.p
    n = chi.modulus.deg
    top = n - 1 if upto is None else upto
    if chi.table is not None and chi.is_principal():
        raise ASMomentsError("L-series of the principal character diverges")
    curve = getattr(chi, "curve", None)
    coeffs = []
    if curve is not None:
        coeffs = psi_f_sums(curve, top + 1, zero_at_x=curve.is_polynomial())
    else:
        for j in range(top + 2):
            acc = CycInt.zero(p)
            for c in enumerate_monic(F, j):
                acc = acc + chi(c)
            coeffs.append(acc)
    if upto is None and not coeffs[top + 1].is_zero():
        raise InternalConsistencyError("character L-series exceeds degree deg Q - 1")
    return LPoly(p, F.q, coeffs[:top + 1])


def curve_char(curve: CurveParams) -> DirichletChar:
    chi = chi_of_curve(curve)
    chi.curve = curve
    return chi


def l_of_chi_f(curve: CurveParams, upto: int | None = None) -> LPoly:
    """L(u, chi_f) summed to ``upto`` (default: the nominal bound deg Q - 1)."""
    return dirichlet_l(curve_char(curve), upto)


def chi_sums_batched(F: FieldCtx, den: Poly, nums, upto: int, zero_at_x: bool = False):
    """sum_{c in M_j} chi_{h/den}(c) for j <= upto, for every h in ``nums``.

    Independent of the companion-matrix route: chi is evaluated on primes P
    only, through sum_{P(alpha)=0} alpha**i / den(alpha) = sum_k w_k p_{i+k}(P)
    with w = den**-1 mod P and p_m the root power sums, which is linear in
    h; complete multiplicativity then gives every monic from the sieve.
    Returns a list (one per h) of CycInt lists.
    """
    p, q = F.p, F.q
    nums = [n if isinstance(n, Poly) else Poly(F, n) for n in nums]
    hdeg = max(max(h.deg for h in nums), 0)
    irr, csr = factor_index(F, upto)
    add_t, mul_t, _, tr_t = F.np_tables()
    H = np.array([[h.coeff(i) for i in range(hdeg + 1)] for h in nums], dtype=np.int64)
    E = np.zeros((len(nums), len(irr)), dtype=np.int64)
    dead = np.zeros(len(irr), dtype=bool)
    for pid, P in enumerate(irr):
        if (zero_at_x and P.deg == 1 and P.coeff(0) == 0) or (den.deg > 0 and (den % P).is_zero()):
            dead[pid] = True
            continue
        k = P.deg
        w = Poly.const(F, 1) if den.deg <= 0 else invmod(den, P)
        ps = power_sums(P, hdeg + k)
        s = []
        for i in range(hdeg + 1):
            acc = 0
            for jj in range(k):
                acc = F.add(acc, F.mul(w.coeff(jj), ps[i + jj]))
            s.append(acc)
        v = np.zeros(len(nums), dtype=np.int64)
        for i, si in enumerate(s):
            if si:
                v = add_t[v, mul_t[H[:, i], si]]
        E[:, pid] = tr_t[v]
    out = [[CycInt.one(p)] for _ in nums]
    for j in range(1, upto + 1):
        indptr, ids = csr[j]
        starts = indptr[:-1]
        alive = np.add.reduceat(dead[ids].astype(np.int64), starts) == 0
        vals = np.add.reduceat(E[:, ids], starts, axis=1) % p
        for m in range(len(nums)):
            counts = np.bincount(vals[m][alive], minlength=p)
            out[m].append(CycInt.from_counts(p, counts.astype(np.int64)))
    return out


# correspondences

def _one_minus_u(p, q, c=None):
    c = CycInt.one(p) if c is None else c
    return LPoly(p, q, [CycInt.one(p), -c])


def verify_prop_entin(curve: CurveParams) -> bool:
    """chi_f for f in F_d: period x**(d+1), order p, primitive, L(u,chi_f) = (1-u) L(u,f,psi)."""
    F, p = curve.F, curve.p
    d = curve.num.deg
    if not curve.is_polynomial() or d % p == 0 or any(curve.num.coeff(j) for j in range(0, d + 1, p)):
        raise RejectedParameterError("f must lie in F_d")
    chi = chi_of_curve(curve)
    Q = chi.modulus
    tab = chi.tabulate()
    # periodicity on monics of degree d+1, d+2
    for k in (d + 1, d + 2):
        if F.q ** k > 20000:
            break
        for c in enumerate_monic(F, k):
            if c.coeff(0) and chi(c) != tab[_key(F, c % Q, Q.deg)]:
                raise CorrespondenceViolation(f"chi_f is not periodic mod x^{d + 1}")
    # multiplicativity on the residue table
    us = units(Q)
    if len(us) ** 2 <= 4000:
        pairs = itertools.product(us, us)
    else:
        rng = random.Random(len(us))
        pairs = ((rng.choice(us), rng.choice(us)) for _ in range(2000))
    for a, b in pairs:
        if tab[_key(F, (a * b) % Q, Q.deg)] != tab[_key(F, a, Q.deg)] * tab[_key(F, b, Q.deg)]:
            raise CorrespondenceViolation("chi_f is not multiplicative mod x^(d+1)")
    roots = {CycInt.zeta_power(p, r) for r in range(p)}
    if not all(v in roots for v in tab.values()) or chi.is_principal():
        raise CorrespondenceViolation("chi_f does not have order p")
    if not chi.is_primitive():
        raise CorrespondenceViolation("chi_f is not primitive mod x^(d+1)")
    lhs = l_of_chi_f(curve)
    via_table = dirichlet_l(DirichletChar(Q, table=tab))
    rhs = _one_minus_u(p, curve.q) * l_from_point_counts(curve)
    if lhs != rhs or via_table != rhs:
        raise CorrespondenceViolation("L(u, chi_f) != (1 - u) L(u, f, psi)")
    return True


def delta_printed(curve: CurveParams) -> CycInt:
    """psi(tr f(infinity)) when deg h = deg g = d, and 1 otherwise."""
    p = curve.p
    h, g = curve.num, curve.den
    d = curve.d if curve.d is not None else max(h.deg, g.deg)
    if h.deg == g.deg == d:
        return CycInt.zeta_power(p, curve.F.trace(curve.f.at_infinity()))
    return CycInt.one(p)


def verify_prop_l2(curve: CurveParams, raise_on_failure: bool = True) -> bool:
    """L(u, chi_f) = (1 - delta(f) u) L(u, f, psi), with delta as printed."""
    p, q = curve.p, curve.q
    L = l_from_point_counts(curve)
    lhs = l_of_chi_f(curve, upto=L.degree + 2)
    rhs = _one_minus_u(p, q, delta_printed(curve)) * L
    ok = lhs == rhs
    if not ok and raise_on_failure:
        raise CorrespondenceViolation(f"(1 - delta u) relation fails for {curve.f}")
    return ok


def l2_relation_true_factor(curve: CurveParams) -> LPoly:
    """The factor E(u) with L(u, chi_f) = E(u) L(u, f, psi): the infinity Euler factor.

    It is 1 - psi(tr f(infinity)) u when f is regular at infinity and 1 when
    infinity is a pole.
    """
    p, q = curve.p, curve.q
    finf = curve.f.at_infinity()
    if finf is None:
        return LPoly.one(p, q)
    return _one_minus_u(p, q, CycInt.zeta_power(p, curve.F.trace(finf)))



def prop_l2_survey(curves, Ls=None):
    """For each ordinary curve: (printed relation holds, infinity-factor relation holds).

    L(u, chi_f) comes from :func:`chi_sums_batched` (grouped by denominator),
    L(u, f, psi) from point counts.
    """
    curves = list(curves)
    if Ls is None:
        Ls = l_functions(curves)
    groups = {}
    for i, cv in enumerate(curves):
        groups.setdefault(cv.den.c, []).append(i)
    out = [None] * len(curves)
    for dc, idxs in groups.items():
        F = curves[idxs[0]].F
        upto = max(Ls[i].degree for i in idxs) + 2
        sums = chi_sums_batched(F, Poly(F, dc), [curves[i].num for i in idxs], upto)
        for i, b in zip(idxs, sums):
            cv, L = curves[i], Ls[i]
            lhs = LPoly(cv.p, cv.q, b)
            printed = lhs == _one_minus_u(cv.p, cv.q, delta_printed(cv)) * L
            true = lhs == l2_relation_true_factor(cv) * L
            out[i] = (printed, true)
    return out


# character groups

class CharGroup:
    """A finite group of characters mod ``modulus`` given by its member list."""

    def __init__(self, tag: str, modulus: Poly, members, structure=None, params=None):
        self.tag = tag
        self.modulus = modulus
        self.members = list(members)
        self.structure = structure
        self.params = params or {}

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"CharGroup({self.tag}, mod {list(self.modulus.c)}, size {len(self)})"

    def average(self, c: Poly):
        """(sum_chi chi(c), |B|)."""
        acc = CycInt.zero(self.modulus.F.p)
        for chi in self.members:
            acc = acc + chi(c)
        return acc, len(self.members)


def h_group_size(q: int, p: int, n: int) -> int:
    """|H_n| = |(F_q[x]/x^n)^x [p]| = q**(n-1-floor((n-1)/p))."""
    return q ** (n - 1 - (n - 1) // p)


def h_group_size_printed(q: int, p: int, n: int) -> int:
    """q**(n-1-floor(n/p)); equal to :func:`h_group_size` exactly when p does not divide n."""
    return q ** (n - 1 - n // p)


def h_odd_size(q: int, p: int, d: int, n: int) -> int:
    """|H_odd,n| for n in {d, d+1}, d prime to 2p."""
    if n == d + 1:
        return q ** ((d + 1) // 2 - d // p + d // (2 * p))
    if n == d:
        return q ** ((d - 1) // 2 - d // p + d // (2 * p))
    raise RejectedParameterError("n must be d or d+1")


def _poly_chars(F, n, exps):
    """chi_f mod x**n for f running over all polys supported on ``exps``."""
    Q = x_power(F, n)
    members = []
    for cs in itertools.product(range(F.q), repeat=len(exps)):
        coeffs = [0] * n
        for j, c in zip(exps, cs):
            coeffs[j] = c
        f = Poly(F, coeffs)
        fr = RatFn(f)
        members.append(DirichletChar(Q, func=(lambda c, fr=fr: chi_f_reversed(fr, c)), label=tuple(coeffs)))
    return Q, members


def _is_pth_power_mod(F, c: Poly, Q: Poly) -> bool:
    return _key(F, c % Q, Q.deg) in _pth_powers(F, Q.c)


@lru_cache(maxsize=64)
def _pth_powers(F, Qc):
    Q = Poly(F, Qc)
    return frozenset(_key(F, powmod(u, F.p, Q), Q.deg) for u in units(Q))


def _rs_set(F, Q: Poly):
    """R*S mod Q with R = {g(x^2)}, S = {g(x^p)} (both with nonzero constant term)."""
    n = Q.deg
    def sub(step):
        out = set()
        m = (n - 1) // step + 1
        for cs in itertools.product(range(F.q), repeat=m):
            if cs[0] == 0:
                continue
            co = [0] * n
            for i, c in enumerate(cs):
                co[i * step] = c
            out.add(Poly(F, co))
        return out
    R, S = sub(2), sub(F.p)
    return {_key(F, (a * b) % Q, n) for a in R for b in S}


def char_group(tag: str, F: FieldCtx, **params) -> CharGroup:
    """Construct H (n), H_odd (d, n), G (g) or G_gQ (g, Q) with its member list.

    Cardinalities are asserted against the closed forms.
    """
    p, q = F.p, F.q
    if tag == "H":
        n = params["n"]
        Q, members = _poly_chars(F, n, [j for j in range(1, n) if j % p])
        expected = h_group_size(q, p, n)
    elif tag == "H_odd":
        d, n = params["d"], params["n"]
        if d % 2 == 0 or d % p == 0:
            raise RejectedParameterError("d must be prime to 2p")
        Q, members = _poly_chars(F, n, [j for j in range(1, n, 2) if j % p])
        expected = h_odd_size(q, p, d, n)
    elif tag == "G":
        g = params["g"]
        Q = g * g
        members = exponent_p_characters(Q)
        expected = q ** g.deg
    elif tag == "G_gQ":
        g, Q1 = params["g"], params["Q"]
        if (g % Q1) != Poly(F):
            raise RejectedParameterError("Q must divide g")
        Q = g * Q1
        members = exponent_p_characters(Q)
        expected = q ** Q1.deg
    else:
        raise RejectedParameterError(f"unknown group tag {tag!r}")
    if len(members) != expected:
        raise InternalConsistencyError(f"|{tag}| = {len(members)}, expected {expected}")
    return CharGroup(tag, Q, members, params=params)


def exponent_p_characters(Q: Poly):
    """All characters mod Q with chi**p = 1, built from a basis of A/A^p, A = (F_q[x]/Q)^x."""
    F = Q.F
    p, n = F.p, Q.deg
    us = units(Q)
    keys = [_key(F, u, n) for u in us]
    pw = _pth_powers(F, Q.c)
    # coordinates: label[k] = exponent vector of the class of k in A/A^p
    label = {k: () for k in pw}
    basis = []
    for u, k in zip(us, keys):
        if k in label:
            continue
        basis.append(u)
        new = {}
        powers = [Poly.const(F, 1)]
        for _ in range(p - 1):
            powers.append((powers[-1] * u) % Q)
        for e, up in enumerate(powers):
            for kk, vec in label.items():
                prod = _key(F, (Poly(F, kk) * up) % Q, n)
                new[prod] = vec + (e,)
        label = {k2: v for k2, v in new.items()}
    r = len(basis)
    if len(label) != len(us):
        raise InternalConsistencyError("A/A^p labelling is incomplete")
    members = []
    for v in itertools.product(range(p), repeat=r):
        tab = {k: CycInt.zeta_power(p, sum(a * b for a, b in zip(v, vec))) for k, vec in label.items()}
        members.append(DirichletChar(Q, table=tab, label=v))
    return members


def primitive_members(group: CharGroup):
    return [chi for chi in group.members if chi.is_primitive()]


def perp_structural(F: Poly, group: CharGroup) -> bool:
    """Structural description of the perp of ``group``."""
    Fq = F.F
    Q = group.modulus
    if F.is_zero() or gcd(F, Q).deg > 0:
        return False
    if group.tag == "H":
        r = F % Q
        return all(r.coeff(j) == 0 for j in range(Q.deg) if j % Fq.p)
    if group.tag == "H_odd":
        return _key(Fq, F % Q, Q.deg) in _rs_set_cached(Fq, Q.c)
    if group.tag in ("G", "G_gQ"):
        return _is_pth_power_mod(Fq, F, Q)
    raise RejectedParameterError(f"no structural perp for {group.tag}")


@lru_cache(maxsize=32)
def _rs_set_cached(F, Qc):
    return frozenset(_rs_set(F, Poly(F, Qc)))


def perp_membership(F: Poly, group: CharGroup) -> bool:
    """Membership in the perp by averaging and by structure; the two must agree."""
    total, size = group.average(F)
    if total == CycInt.from_int(F.F.p, size):
        avg = True
    elif total.is_zero():
        avg = False
    else:
        raise TheoryViolation(f"group average of chi({F}) is neither 0 nor 1")
    if avg != perp_structural(F, group):
        raise TheoryViolation(f"perp routes disagree at {F}")
    return avg


def three_case_value(F: Poly, d: int, odd: bool = False) -> int:
    """Predicted sum_{f} chi_f(F) over F_d (or the odd family): 0, -|H_d|, |H_{d+1}| - |H_d|.

    F is monic; the perp conditions apply to its reversal F*, the argument of
    the Dirichlet characters mod x**(d+1).
    """
    Fq = F.F
    if F.coeff(0) == 0:
        return 0
    F = reversal(F)
    if odd:
        Hd = char_group("H_odd", Fq, d=d, n=d)
        Hd1 = char_group("H_odd", Fq, d=d, n=d + 1)
    else:
        Hd = char_group("H", Fq, n=d)
        Hd1 = char_group("H", Fq, n=d + 1)
    if not perp_structural(F, Hd):
        return 0
    if not perp_structural(F, Hd1):
        return -len(Hd)
    return len(Hd1) - len(Hd)


def quad_split_type(Q: Poly) -> str:
    """'split' when x is a square mod the irreducible Q, else 'inert'."""
    F = Q.F
    if not Q.is_monic() or not is_irreducible(Q):
        raise RejectedParameterError("Q must be monic irreducible")
    if Q == Poly.x(F):
        raise RejectedParameterError("Q must differ from x")
    r = powmod(Poly.x(F), (F.q ** Q.deg - 1) // 2, Q)
    return "split" if r == Poly.const(F, 1) else "inert"


def count_primitive_g(g: Poly) -> tuple[int, int]:
    """(number of primitive members of G mod g**2, phi(g))."""
    grp = char_group("G", g.F, g=g)
    return len(primitive_members(grp)), euler_phi(g)


def hg_members(g: Poly):
    """H_g = {h/g : deg h < deg g, (h, g) = 1}."""
    F = g.F
    out = []
    for cs in itertools.product(range(F.q), repeat=g.deg):
        h = Poly(F, cs)
        if not h.is_zero() and gcd(h, g).deg == 0:
            out.append(RatFn(h, g))
    return out


def verify_bijection_hg(g: Poly) -> dict:
    """Compare {chi_f : f in H_g} with the primitive order-p characters mod g**2.

    Both sides are tabulated on units mod g**2; reports the counts, whether
    the images are distinct, and whether the two sets coincide.
    """
    Q = g * g
    imgs = []
    for f in hg_members(g):
        chi = DirichletChar(Q, func=lambda c, f=f: chi_f_ordinary(f, c))
        imgs.append(chi.fingerprint())
    prim = {chi.fingerprint() for chi in primitive_members(char_group("G", g.F, g=g))}
    return {
        "H_g": len(imgs),
        "primitive": len(prim),
        "phi": euler_phi(g),
        "injective": len(set(imgs)) == len(imgs),
        "equal": set(imgs) == prim,
    }
