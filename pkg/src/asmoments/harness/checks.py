"""Stand-alone lemma checks: divisor sums in progressions and character averages."""

from __future__ import annotations

import itertools
from math import comb

from ..errors import BudgetExceeded, RejectedParameterError
from ..exact import CycInt
from ..families import FamilySpec, enumerate_family, family_size
from ..gf import FieldCtx
from ..polyring import Poly, divisor_k, is_irreducible, root_sum_eval

DEFAULT_ENUM_BUDGET = 10 ** 6


def _dk(F: Poly, k: int) -> int:
    """d_k of a nonzero polynomial, i.e. of its monic associate."""
    return divisor_k(F.monic(), k)


def divisor_progression_bound(n: int, d: int, k: int, q: int, p: int) -> int | float:
    """3 binom(n+k-1, k-1) (k+2)**(n+d) q**((n-d+[n/p]-[d/p]+1)/2): the short-interval
    bound at h = n - d, as used for divisor sums mod x**(d+1)."""
    e2 = n - d + n // p - d // p + 1
    base = 3 * comb(n + k - 1, k - 1) * (k + 2) ** (n + d)
    if e2 % 2 == 0:
        return base * q ** (e2 // 2)
    return base * q ** (e2 / 2)


def check_divisor_progression(n: int, d: int, k: int, A: Poly,
                              budget: int = DEFAULT_ENUM_BUDGET) -> dict:
    """Sum of d_k over a progression mod x**(d+1), against binom(n+k-1,k-1) q**(n-d).

    Two left sides are enumerated.  ``progression`` runs over all F (any
    leading coefficient) of degree exactly n with F = A mod x**(d+1);
    ``interval`` is the short-interval sum sum_{deg g < n-d} d_k(x**(n-deg A) A*/A(0) + g)
    that the reversal argument produces, which also sees the F of lower
    degree.  The k = 1 count is q**(n-d) exactly for the interval form.
    """
    F = A.F
    q, p = F.q, F.p
    if not n > d >= 0:
        raise RejectedParameterError("need n > d >= 0")
    if A.is_zero() or A.coeff(0) == 0 or A.deg > d:
        raise RejectedParameterError("need A(0) != 0 and deg A <= d")
    h = n - d
    work = (q - 1) * q ** (h - 1) + q ** h
    if work > budget:
        raise BudgetExceeded(f"progression enumeration needs {work} terms", work, budget, 0)

    low = list(A.c) + [0] * (d + 1 - len(A.c))
    prog = 0
    for lead in range(1, q):
        for mid in itertools.product(range(q), repeat=h - 1):
            prog += _dk(Poly(F, low + list(mid)[::-1] + [lead]), k)

    # x**(n - deg A) A*(x) / A(0) is monic of degree n with F*-shape
    a0inv = F.inv(A.coeff(0))
    top = [F.mul(a0inv, c) for c in low[::-1]]  # coefficients of x**n .. x**(n-d)
    interval = 0
    for g in itertools.product(range(q), repeat=h):
        interval += _dk(Poly(F, list(g)[::-1] + top[::-1]), k)

    main = comb(n + k - 1, k - 1) * q ** h
    bound = divisor_progression_bound(n, d, k, q, p)
    return {
        "n": n, "d": d, "k": k, "A": list(A.c),
        "progression": prog, "interval": interval, "main": main,
        "progression_diff": abs(prog - main), "interval_diff": abs(interval - main),
        "bound": bound,
        "progression_ok": abs(prog - main) <= bound,
        "interval_ok": abs(interval - main) <= bound,
        "k1_exact": (interval == q ** h) if k == 1 else None,
        "work": work,
    }


def psi_f_prime(f: Poly, P: Poly) -> CycInt:
    """psi_f(P) = psi(tr sum_{P(alpha)=0} f(alpha)) for monic irreducible P (x allowed)."""
    F = f.F
    return CycInt.zeta_power(F.p, F.trace(root_sum_eval(f, P)))


def check_char_average(F: FieldCtx, d: int, primes, exponents) -> dict:
    """Exact average over AS^0_d of prod psi_f(P_i)**h_i, and the predicted 0/1."""
    primes = [P if isinstance(P, Poly) else Poly(F, P) for P in primes]
    exponents = list(exponents)
    if len(primes) != len(exponents):
        raise RejectedParameterError("one exponent per prime")
    if len({P.c for P in primes}) != len(primes):
        raise RejectedParameterError("primes must be distinct")
    if any(not P.is_monic() or not is_irreducible(P) for P in primes):
        raise RejectedParameterError("primes must be monic irreducible")
    if sum(P.deg for P in primes) > d:
        raise RejectedParameterError("total degree of the primes must be at most d")
    p = F.p
    spec = FamilySpec("polynomial", d, p, F.q)
    total = CycInt.zero(p)
    for cv in enumerate_family(spec):
        e = 0
        for P, hh in zip(primes, exponents):
            e += F.trace(root_sum_eval(cv.num, P)) * hh
        total = total + CycInt.zeta_power(p, e % p)
    size = family_size(spec)
    predicted = 1 if all(hh % p == 0 for hh in exponents) else 0
    if total.is_zero():
        avg = 0
    elif total == CycInt.from_int(p, size):
        avg = 1
    else:
        avg = None
    return {"d": d, "primes": [list(P.c) for P in primes], "exponents": exponents,
            "sum": list(total.c), "size": size, "average": avg, "predicted": predicted,
            "ok": avg == predicted}
