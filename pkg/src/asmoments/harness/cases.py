"""Verification cases: stable ids, parameters, modes and profiles.

Modes:
  exact    pass iff brute and formula agree with zero difference in R
  band     pass iff the relative (or absolute) gap is inside the band; the
           margin is always reported
  bound    pass iff an inequality holds on every grid point
  compare  a discrepancy is reported but never counted as a failure
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import RejectedParameterError

MODES = ("exact", "band", "bound", "compare")
PROFILES = ("smoke", "desk", "extended")

# default relative bands for the asymptotic main terms
BAND_THM14 = 0.25
BAND_THM15 = 0.10

TITLES = {
    "thm1.1-k1": "first moment, polynomial family, closed form as printed",
    "thm1.1-k1-derived": "first moment, polynomial family, layer-corrected closed form",
    "thm1.1-k": "k-th moment, polynomial family, Euler-product main term",
    "thm1.2": "second absolute moment, polynomial family, theorem statement",
    "thm1.2-prooffinal": "second absolute moment, polynomial family, combined final display",
    "thm1.2-direct": "second absolute moment, polynomial family, finite diagonal sum",
    "thm1.3": "first moment, odd family, closed form as printed",
    "thm1.3-direct": "first moment, odd family, exact character-sum evaluation",
    "thm1.4-leading": "second moment, odd family, cubic leading coefficient",
    "thm1.5-const": "first moment, ordinary family, main constant",
    "prop2.2": "chi_f for f in F_d: period, order, primitivity, L-relation, bijection",
    "prop2.8": "ordinary family: (1 - delta u) relation as printed",
    "prop2.8-infinity": "ordinary family: relation with the Euler factor at infinity",
    "decomp-ordinary": "ordinary family: shift partitions and chi_ax chi_b chi_f0 factorisation",
    "prop2.10": "primitive exponent-p characters mod g^2 number phi(g); H_g bijection",
    "prop6.1": "per-denominator average, deg g = d",
    "prop6.2": "per-denominator average, deg g = d - 1",
    "prop6-main": "per-denominator main term, generating function vs direct sum",
    "lem2.1": "shift law L(u, f + b) = L(psi(tr b) u, f)",
    "lem3.2": "divisor sums in progressions mod x^(d+1) within the short-interval bound",
    "lem3.2-k1": "progression counts for k = 1",
    "lem3.4": "alpha_k root-of-unity formula vs defining sum",
    "lem4.1": "approximate functional equation, absolute moments",
    "lem4.2": "family averages of products of psi_f(P)^h",
    "lem5.2": "approximate functional equation, odd family",
    "lem5.3": "H(u, v) series identity, local factors as printed",
    "lem5.3-series": "H(u, v) series identity, local factors summed from their series",
    "fe": "functional equation with |epsilon| = 1",
    "rh": "inverse roots on |u| = q^(-1/2)",
    "lem-S": "S_ell closed forms vs root-of-unity sums",
    "lem-unit": "unit root-of-unity sum",
    "orthogonality": "group averages of chi(a) are 1 or 0",
    "perp-dual": "perp membership by averaging and by structure",
    "three-case": "three-case value of sum_f chi_f(F)",
    "lchi-x": "L(u^2, chi_x) from split/inert counts and from enumerated primes",
    "euler-tail": "doubling the truncation moves the value less than the tail bound",
    "psi-indep": "moments unchanged under psi -> psi^a",
    "card-Fd": "|F_d| against enumeration",
    "card-polynomial": "|AS^0_d| against enumeration",
    "card-odd": "|AS^0,odd_d| against enumeration",
    "card-ordinary": "|AS^ord_d| against enumeration",
    "card-H": "|H_n| against the character group",
    "card-Hodd": "|H_odd,n| against the character group",
}


@dataclass(frozen=True)
class VerificationCase:
    id: str
    params: dict = field(default_factory=dict)
    mode: str = "exact"
    band: float | None = None

    def __post_init__(self):
        if self.id not in TITLES:
            raise RejectedParameterError(f"unknown case id {self.id!r}")
        if self.mode not in MODES:
            raise RejectedParameterError(f"unknown mode {self.mode!r}")
        if self.mode == "band" and self.band is None:
            raise RejectedParameterError("band mode needs a band")

    @property
    def theorem(self) -> str:
        return TITLES[self.id]

    def key(self):
        return (self.id, tuple(sorted((k, repr(v)) for k, v in self.params.items())))

    def to_json(self):
        out = {"case": self.id, "theorem": self.theorem, "params": _jsonable(self.params),
               "mode": self.mode}
        if self.band is not None:
            out["band"] = self.band
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def C(cid, mode="exact", band=None, **params):
    return VerificationCase(cid, params, mode, band)


def _smoke():
    return [
        C("thm1.1-k1", p=3, q=3, d=2),
        C("thm1.1-k1-derived", p=3, q=3, d=2),
        C("thm1.2-prooffinal", p=3, q=3, d=2),
        C("thm1.2", "compare", p=3, q=3, d=2),
        C("thm1.3", p=3, q=3, d=5),
        C("thm1.3-direct", p=3, q=3, d=5),
        C("prop2.2", p=3, q=3, d=2),
        C("prop2.8", p=3, q=3, d=2),
        C("prop2.8-infinity", p=3, q=3, d=2),
        C("prop2.10", p=3, q=3, maxdeg=2),
        C("lem2.1", p=3, q=3, d=2),
        C("lem3.2", "bound", p=3, q=3, nmax=3, kmax=2, samples=3),
        C("lem3.2-k1", p=3, q=3, nmax=3),
        C("lem3.4", p=3, q=3, kmax=2),
        C("lem4.2", p=3, q=3, d=2),
        C("lem-S", p=3, q=3),
        C("lem-unit", ps=[3]),
        C("fe", kind="polynomial", p=3, q=3, d=2),
        C("rh", "bound", kind="polynomial", p=3, q=3, d=2),
        C("card-Fd", p=3, q=3, d=2),
        C("card-H", p=3, q=3, n=3),
    ]


def _desk():
    pts = [(3, 3, 2), (3, 3, 4), (3, 9, 2), (5, 5, 2)]
    out = []
    out += [C("thm1.1-k1", p=p, q=q, d=d) for p, q, d in pts]
    out += [C("thm1.1-k1-derived", p=p, q=q, d=d) for p, q, d in pts]
    out += [C("thm1.1-k", "band", band=1.0, p=3, q=3, d=d, k=k) for d in (2, 4, 5) for k in (2, 3)]
    for d in (2, 4, 5):
        out += [C("thm1.2", "compare", p=3, q=3, d=d),
                C("thm1.2-prooffinal", p=3, q=3, d=d),
                C("thm1.2-direct", p=3, q=3, d=d)]
    for d in (5, 7):
        out += [C("thm1.3", p=3, q=3, d=d), C("thm1.3-direct", p=3, q=3, d=d)]
    out += [C("thm1.4-leading", "band", band=BAND_THM14, p=3, q=3, ds=[5, 7, 11, 13], variant=v)
            for v in ("printed", "series")]
    out += [C("thm1.5-const", "band", band=BAND_THM15, p=3, q=3, ds=[2, 3, 4])]
    out += [C("prop2.2", p=3, q=3, d=d) for d in (1, 2, 4)]
    out += [C("prop2.8", p=3, q=3, d=d) for d in (2, 3, 4)]
    out += [C("prop2.8-infinity", p=3, q=3, d=d) for d in (2, 3, 4)]
    out += [C("decomp-ordinary", p=3, q=3, d=d) for d in (2, 3)]
    out += [C("card-ordinary", p=3, q=3, d=d) for d in (2, 3, 4)]
    out += [C("prop2.10", p=3, q=3, maxdeg=3)]
    out += [C("prop6-main", p=3, q=3, maxdeg=3)]
    out += [C("prop6.1", "band", band=1.0, p=3, q=3, d=d) for d in (2, 3)]
    out += [C("prop6.2", "band", band=1.0, p=3, q=3, d=d) for d in (2, 3)]
    out += [C("lem2.1", p=3, q=3, d=d) for d in (2, 4)]
    out += [C("lem2.1", p=3, q=9, d=2), C("lem2.1", p=5, q=5, d=2)]
    out += [C("fe", kind="polynomial", p=3, q=3, d=4), C("fe", kind="odd", p=3, q=3, d=7),
            C("fe", kind="ordinary", p=3, q=3, d=3), C("fe", kind="polynomial", p=5, q=5, d=3)]
    out += [C("lem4.1", p=3, q=3, d=d, k=k) for d in (2, 4) for k in (1, 2)]
    out += [C("lem5.2", p=3, q=3, d=d) for d in (5, 7)]
    out += [C("lem3.4", p=p, q=q, kmax=3) for p, q in ((3, 3), (3, 9), (5, 5))]
    out += [C("lem-S", p=p, q=q) for p, q in ((3, 3), (3, 9), (5, 5))]
    out += [C("lem-unit", ps=[3, 5, 7])]
    out += [C("orthogonality", p=3, q=3, d=4), C("perp-dual", p=3, q=3, d=4),
            C("orthogonality", p=3, q=3, d=5, odd=True), C("perp-dual", p=3, q=3, d=5, odd=True)]
    out += [C("three-case", p=3, q=3, d=d) for d in (2, 4)]
    out += [C("three-case", p=3, q=3, d=5, odd=True)]
    out += [C("rh", "bound", kind="polynomial", p=3, q=3, d=4),
            C("rh", "bound", kind="odd", p=3, q=3, d=7)]
    out += [C("lem5.3", p=3, q=3, T=10), C("lem5.3-series", p=3, q=3, T=10)]
    out += [C("lchi-x", q=3, N=12)]
    out += [C("euler-tail", "bound", p=3, q=3, product=pr) for pr in ("G", "E", "thm11k", "H")]
    out += [C("lem3.2", "bound", p=3, q=3, nmax=5, kmax=3, samples=10),
            C("lem3.2-k1", p=3, q=3, nmax=5)]
    out += [C("lem4.2", p=3, q=3, d=d) for d in (2, 4)]
    out += [C("psi-indep", kind=k, p=3, q=3, d=d) for k, d in (("polynomial", 4), ("odd", 7),
                                                               ("ordinary", 3))]
    out += [C("card-Fd", p=3, q=3, d=d) for d in (1, 2, 4, 5)]
    out += [C("card-polynomial", p=p, q=q, d=d) for p, q, d in pts + [(3, 3, 5)]]
    out += [C("card-odd", p=3, q=3, d=d) for d in (5, 7, 11)]
    out += [C("card-H", p=3, q=3, n=n) for n in (2, 3, 4, 5, 6)]
    out += [C("card-Hodd", p=3, q=3, d=d, n=n) for d in (5, 7) for n in (d, d + 1)]
    return out


def _extended():
    out = _desk()
    out += [C("thm1.1-k1-derived", p=3, q=3, d=d) for d in (5, 7)]
    out += [C("thm1.1-k1-derived", p=5, q=5, d=3)]
    out += [C("thm1.2-prooffinal", p=3, q=3, d=7), C("thm1.2-direct", p=3, q=3, d=7)]
    out += [C("thm1.4-leading", "band", band=BAND_THM14, p=3, q=3, ds=[7, 11, 13, 17], variant=v)
            for v in ("printed", "series")]
    out += [C("prop2.2", p=3, q=9, d=2), C("prop2.2", p=5, q=5, d=3)]
    out += [C("lem5.3", p=3, q=3, T=14), C("lem5.3-series", p=3, q=3, T=14)]
    out += [C("rh", "bound", kind="ordinary", p=3, q=3, d=3),
            C("rh", "bound", kind="polynomial", p=5, q=5, d=3)]
    return out


def profile_cases(profile: str):
    if profile == "smoke":
        return _smoke()
    if profile == "desk":
        return _desk()
    if profile == "extended":
        return _extended()
    raise RejectedParameterError(f"unknown profile {profile!r}")


def case_ids():
    return list(TITLES)
