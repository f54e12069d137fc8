"""The three curve families, their sizes, and exact brute-force moments.

Enumeration is exhaustive and deterministic: members are listed
lexicographically in (denominator, numerator coefficients), highest degree
first.  Moments are computed exactly in the radical field R.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, InternalConsistencyError, RejectedParameterError
from .exact import CycInt, ExactNum, radical_field
from .gf import FieldCtx, make_field
from .lfun import CurveParams, LPoly, expected_degree, l_functions, l_functions_fe, make_curve
from .polyring import Poly, RatFn, enumerate_monic, euler_phi, gcd, is_squarefree

KINDS = ("polynomial", "odd", "ordinary")
DEFAULT_BUDGET = 5 * 10 ** 9


def _field_degree(p: int, q: int) -> int:
    e, r = 0, 1
    while r < q:
        r *= p
        e += 1
    if r != q:
        raise RejectedParameterError(f"q={q} is not a power of p={p}")
    return e


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    d: int
    p: int
    q: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RejectedParameterError(f"unknown family kind {self.kind!r}")
        _field_degree(self.p, self.q)
        if self.d < 1:
            raise RejectedParameterError("d must be positive")
        if self.kind in ("polynomial", "odd") and self.d % self.p == 0:
            raise RejectedParameterError("polynomial families need gcd(d, p) = 1")
        if self.kind == "odd" and self.d % 2 == 0:
            raise RejectedParameterError("the odd family needs gcd(d, 2p) = 1")

    @property
    def field(self) -> FieldCtx:
        return make_field(self.p, _field_degree(self.p, self.q))

    def to_json(self):
        return {"kind": self.kind, "d": self.d, "p": self.p, "q": self.q}


# cardinalities

def size_f_d(p: int, q: int, d: int) -> int:
    """|F_d| = (q-1) q**(d - floor(d/p) - 1)."""
    return (q - 1) * q ** (d - d // p - 1)


def size_polynomial(p: int, q: int, d: int) -> int:
    return q * size_f_d(p, q, d)


def size_odd(p: int, q: int, d: int) -> int:
    return (q - 1) * q ** ((d - 1) // 2 - (d - 1) // p + (d - 1) // (2 * p))


def squarefree_phi_sum(F: FieldCtx, n: int) -> int:
    """sum of phi(g) over monic square-free g of degree n, by enumeration."""
    return sum(euler_phi(g) for g in enumerate_monic(F, n) if is_squarefree(g))


def size_ordinary(p: int, q: int, d: int) -> int:
    """sum_{g in M_d sf} q phi(g) + sum_{g in M_{d-1} sf} q(q-1) phi(g)."""
    F = make_field(p, _field_degree(p, q))
    return q * squarefree_phi_sum(F, d) + q * (q - 1) * squarefree_phi_sum(F, d - 1)


def family_size(spec: FamilySpec) -> int:
    if spec.kind == "polynomial":
        return size_polynomial(spec.p, spec.q, spec.d)
    if spec.kind == "odd":
        return size_odd(spec.p, spec.q, spec.d)
    return size_ordinary(spec.p, spec.q, spec.d)


# enumeration

def _poly_members(F, d, positions):
    """Polynomials with a_d != 0 supported on ``positions`` (which include d)."""
    rest = sorted((j for j in positions if j != d), reverse=True)
    for lead in range(1, F.q):
        for cs in itertools.product(range(F.q), repeat=len(rest)):
            co = [0] * (d + 1)
            co[d] = lead
            for j, c in zip(rest, cs):
                co[j] = c
            yield co


def _iter_family(spec: FamilySpec):
    F, d, p = spec.field, spec.d, spec.p
    if spec.kind == "polynomial":
        pos = [0] + [j for j in range(1, d + 1) if j % p]
        for co in _poly_members(F, d, pos):
            yield make_curve(F, co, family="polynomial", d=d, check=False)
    elif spec.kind == "odd":
        pos = [j for j in range(1, d + 1, 2) if j % p]
        for co in _poly_members(F, d, pos):
            yield make_curve(F, co, family="odd", d=d, check=False)
    else:
        for gdeg in (d, d - 1):
            for g in enumerate_monic(F, gdeg):
                if not is_squarefree(g):
                    continue
                for co in _ordinary_numerators(F, d, gdeg):
                    h = Poly(F, co)
                    if gcd(h, g).deg == 0:
                        yield make_curve(F, h, g, family="ordinary", d=d, check=False)


def _ordinary_numerators(F, d, gdeg):
    if gdeg == d:
        # deg h <= d, h != 0
        for cs in itertools.product(range(F.q), repeat=d + 1):
            co = cs[::-1]
            if any(co):
                yield co
    else:
        for co in _poly_members(F, d, range(d + 1)):
            yield co


def enumerate_family(spec: FamilySpec, check: bool = True):
    """Members of the family as CurveParams, with the count asserted at the end."""
    n = 0
    for cv in _iter_family(spec):
        n += 1
        yield cv
    if check and n != family_size(spec):
        raise InternalConsistencyError(f"enumerated {n} members, expected {family_size(spec)}")


def family_members(spec: FamilySpec):
    return list(enumerate_family(spec))


# structural decompositions

def shift_partition_ok(spec: FamilySpec) -> bool:
    """AS^0_d is the disjoint union over b of F_d + b."""
    if spec.kind != "polynomial":
        raise RejectedParameterError("shift partition is for the polynomial family")
    F = spec.field
    members = {cv.num.c for cv in enumerate_family(spec)}
    fd = [cv.num for cv in enumerate_family(spec) if cv.num.coeff(0) == 0]
    if len(fd) != size_f_d(spec.p, spec.q, spec.d):
        return False
    union = []
    for b in range(F.q):
        union.extend((f + Poly.const(F, b)).c for f in fd)
    return len(union) == len(set(union)) and set(union) == members


def ordinary_partition_ok(spec: FamilySpec) -> bool:
    """AS^ord_{d,g} = union of H_g + b (deg g = d) or H_g + ax + b (deg g = d-1), disjointly."""
    from .chars import hg_members
    if spec.kind != "ordinary":
        raise RejectedParameterError("ordinary partition is for the ordinary family")
    F, d = spec.field, spec.d
    by_g = {}
    for cv in enumerate_family(spec):
        by_g.setdefault(cv.den.c, set()).add(cv.f)
    for gc, members in by_g.items():
        g = Poly(F, gc)
        hg = hg_members(g)
        if len(hg) != euler_phi(g):
            return False
        shifts = [Poly.const(F, b) for b in range(F.q)]
        if g.deg == d - 1:
            shifts = [Poly(F, (b, a)) for a in range(1, F.q) for b in range(F.q)]
        union = [f + RatFn(s) for s in shifts for f in hg]
        if len(union) != len(set(union)) or set(union) != members:
            return False
    return True


# moments

@dataclass
class MomentResult:
    spec: FamilySpec
    k: int
    absolute: bool
    value: ExactNum
    size: int
    work: int = 0
    extras: dict = field(default_factory=dict)

    def to_complex(self, precision=106):
        return self.value.to_complex(precision)

    def to_json(self):
        z = self.value.to_complex(80)
        return {
            "family": self.spec.to_json(),
            "k": self.k,
            "absolute": self.absolute,
            "size": self.size,
            "exact": self.value.to_json(),
            "decimal": [f"{float(z.real):.15g}", f"{float(z.imag):.15g}"],
        }


def work_estimate(spec: FamilySpec, extra: int = 2, fe: bool = False) -> int:
    """Point evaluations needed by the point-count route: size * sum_n q**n / n."""
    D = expected_l_degree(spec)
    top = D // 2 + 1 if fe else D + extra
    return family_size(spec) * sum(spec.q ** n // n for n in range(1, top + 1))


def _group_chunks(members, jobs):
    """Split into chunks that keep denominator groups together, in order."""
    groups = []
    for cv in members:
        if groups and groups[-1][0].den == cv.den:
            groups[-1].append(cv)
        else:
            groups.append([cv])
    if jobs <= 1:
        return [members]
    target = max(1, len(members) // (4 * jobs))
    chunks, cur = [], []
    for grp in groups:
        cur.extend(grp)
        if len(cur) >= target:
            chunks.append(cur)
            cur = []
    if cur:
        chunks.append(cur)
    return chunks


METHODS = ("auto", "full", "fe")


def _pick_method(spec: FamilySpec, method: str) -> str:
    if method not in METHODS:
        raise RejectedParameterError(f"unknown method {method!r}")
    if method != "auto":
        return method
    # half the point counts pay off once q**D dominates the per-curve overhead
    return "fe" if spec.kind != "ordinary" and expected_l_degree(spec) >= 8 else "full"


def family_l_functions(spec: FamilySpec, jobs: int = 1, budget: int | None = DEFAULT_BUDGET,
                       method: str = "auto"):
    """(members, L-polynomials) for the whole family, in enumeration order.

    ``method="full"`` counts points up to the degree and checks the excess
    coefficients vanish; ``"fe"`` counts half as far and completes with the
    functional equation, checking the overlap.
    """
    method = _pick_method(spec, method)
    est = work_estimate(spec, fe=method == "fe")
    if budget is not None and est > budget:
        raise BudgetExceeded(f"estimated work {est} exceeds budget {budget}", est, budget, 0)
    members = family_members(spec)
    chunks = _group_chunks(members, jobs)
    fn = l_functions_fe if method == "fe" else l_functions
    if jobs <= 1 or len(chunks) == 1:
        Ls = [L for ch in chunks for L in fn(ch)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            Ls = [L for res in ex.map(fn, chunks) for L in res]
    return members, Ls


def _sum_lpolys(Ls, p, q):
    top = max(len(L.coeffs) for L in Ls)
    acc = [CycInt.zero(p) for _ in range(top)]
    for L in Ls:
        for j, a in enumerate(L.coeffs):
            acc[j] = acc[j] + a
    return LPoly(p, q, acc)


def moment_from_l(Ls, p: int, q: int, k: int = 1, absolute: bool = False) -> ExactNum:
    """(1/N) sum L(q**-1/2)**k, or (1/N) sum |L(q**-1/2)|**(2k) when ``absolute``."""
    if k < 1:
        raise RejectedParameterError("k must be positive")
    R = radical_field(p, q)
    n = len(Ls)
    if not absolute and k == 1:
        return _sum_lpolys(Ls, p, q).at_inv_sqrt_q() * Fraction(1, n)
    acc = R.zero()
    for L in Ls:
        v = L.at_inv_sqrt_q()
        if absolute:
            v = v * v.conj()
        acc = acc + v ** k
    return acc * Fraction(1, n)


def brute_moment(spec: FamilySpec, k: int = 1, absolute: bool = False, jobs: int = 1,
                 budget: int | None = DEFAULT_BUDGET, method: str = "auto") -> MomentResult:
    members, Ls = family_l_functions(spec, jobs, budget, method)
    if len(members) != family_size(spec):
        raise InternalConsistencyError("family size mismatch")
    val = moment_from_l(Ls, spec.p, spec.q, k, absolute)
    return MomentResult(spec, k, absolute, val, len(members),
                        work_estimate(spec, fe=_pick_method(spec, method) == "fe"))


def moment_sweep(kind: str, p: int, q: int, ds, k: int = 1, absolute: bool = False,
                 jobs: int = 1, budget: int | None = DEFAULT_BUDGET, method: str = "auto"):
    """One MomentResult per d, in the given order."""
    return [brute_moment(FamilySpec(kind, d, p, q), k, absolute, jobs, budget, method) for d in ds]


def expected_l_degree(spec: FamilySpec) -> int:
    return 2 * spec.d - 2 if spec.kind == "ordinary" else spec.d - 1


def check_degrees(members, Ls, spec: FamilySpec) -> bool:
    D = expected_l_degree(spec)
    return all(L.degree == D == expected_degree(cv) for cv, L in zip(members, Ls))


__all__ = [
    "KINDS", "FamilySpec", "MomentResult", "enumerate_family", "family_members", "family_size",
    "size_f_d", "size_polynomial", "size_odd", "size_ordinary", "squarefree_phi_sum",
    "shift_partition_ok", "ordinary_partition_ok", "brute_moment", "moment_sweep",
    "moment_from_l", "family_l_functions", "work_estimate", "expected_l_degree", "check_degrees",
    "CurveParams",
]
