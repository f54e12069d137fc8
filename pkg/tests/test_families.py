from fractions import Fraction

import pytest

from asmoments.errors import BudgetExceeded, RejectedParameterError
from asmoments.exact import radical_field
from asmoments.families import (FamilySpec, brute_moment, enumerate_family, family_l_functions,
                                family_members, family_size, moment_sweep, ordinary_partition_ok,
                                shift_partition_ok, size_f_d, size_odd, size_ordinary,
                                squarefree_phi_sum)
from asmoments.formulas import thm11_k1_derived, thm12_proof_final
from asmoments.polyring import Poly, enumerate_monic, euler_phi, is_squarefree


def test_sizes():
    assert family_size(FamilySpec("polynomial", 2, 3, 3)) == 18
    assert len(family_members(FamilySpec("polynomial", 2, 3, 3))) == 18
    assert family_size(FamilySpec("odd", 5, 3, 3)) == len(family_members(FamilySpec("odd", 5, 3, 3))) == 6
    assert size_f_d(3, 3, 4) == 18


def test_ordinary_count_matches_phi_sums(F3):
    direct = sum(3 * euler_phi(g) for g in enumerate_monic(F3, 2) if is_squarefree(g)) + \
        sum(6 * euler_phi(g) for g in enumerate_monic(F3, 1) if is_squarefree(g))
    assert size_ordinary(3, 3, 2) == direct == len(family_members(FamilySpec("ordinary", 2, 3, 3)))
    assert squarefree_phi_sum(F3, 2) == direct // 3 - 2 * squarefree_phi_sum(F3, 1)


@pytest.mark.parametrize("d", [5, 7, 11])
def test_odd_size_formula(d):
    assert size_odd(3, 3, d) == family_size(FamilySpec("odd", d, 3, 3))
    assert size_odd(3, 3, d) == 2 * 3 ** ((d - 1) // 2 - (d - 1) // 3 + (d - 1) // 6)


@pytest.mark.parametrize("kind,d", [("polynomial", 3), ("odd", 4), ("odd", 3), ("blah", 2)])
def test_invalid_specs(kind, d):
    with pytest.raises(RejectedParameterError):
        FamilySpec(kind, d, 3, 3)


@pytest.mark.parametrize("d", [1, 2, 4])
def test_shift_partition(d):
    assert shift_partition_ok(FamilySpec("polynomial", d, 3, 3))


@pytest.mark.parametrize("d", [2, 3])
def test_ordinary_partition(d):
    assert ordinary_partition_ok(FamilySpec("ordinary", d, 3, 3))


def test_odd_closure():
    for cv in enumerate_family(FamilySpec("odd", 7, 3, 3)):
        F = cv.F
        for a in range(F.q):
            assert cv.num(F.neg(a)) == F.neg(cv.num(a))


def test_enumeration_is_lexicographic_and_stable():
    spec = FamilySpec("polynomial", 2, 3, 9)
    a = [cv.num.c for cv in enumerate_family(spec)]
    assert a == [cv.num.c for cv in enumerate_family(spec)]
    assert len(set(a)) == len(a)


def test_first_moment_small():
    res = brute_moment(FamilySpec("polynomial", 2, 3, 3))
    assert res.size == 18
    assert res.value == thm11_k1_derived(3, 3, 2)
    assert res.value == radical_field(3, 3).one()


def test_degenerate_odd_moment():
    assert brute_moment(FamilySpec("odd", 1, 3, 3)).value == radical_field(3, 3).one()


def test_absolute_second_moment():
    res = brute_moment(FamilySpec("polynomial", 2, 3, 3), absolute=True)
    assert res.value == thm12_proof_final(3, 3, 2)


def test_sweep():
    rows = moment_sweep("odd", 3, 3, [5, 7], k=2)
    assert [r.spec.d for r in rows] == [5, 7] and all(r.k == 2 for r in rows)
    assert moment_sweep("odd", 3, 3, []) == []


def test_parallel_matches_serial():
    spec = FamilySpec("polynomial", 4, 3, 3)
    a = brute_moment(spec, k=2, jobs=1)
    b = brute_moment(spec, k=2, jobs=2)
    assert a.value == b.value
    _, La = family_l_functions(spec, 1)
    _, Lb = family_l_functions(spec, 2)
    assert La == Lb


def test_methods_agree():
    spec = FamilySpec("odd", 7, 3, 3)
    assert family_l_functions(spec, method="full")[1] == family_l_functions(spec, method="fe")[1]


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        brute_moment(FamilySpec("polynomial", 5, 3, 3), budget=10)
    assert exc.value.estimate > 10


def test_moment_json():
    js = brute_moment(FamilySpec("polynomial", 2, 5, 5)).to_json()
    assert js["size"] == 100 and js["family"]["q"] == 5
    assert Fraction(js["exact"][0][0]) == 1 and js["decimal"][0] == "1"
