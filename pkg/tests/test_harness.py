import json

import pytest

from asmoments.errors import RejectedParameterError
from asmoments.harness import (TITLES, VerificationCase, case_ids, check_char_average,
                               check_divisor_progression, deterministic_part, divided_difference,
                               failed, make_report, parse_exact, profile_cases, run_cases, to_csv,
                               to_json, to_markdown, verify)
from asmoments.harness.report import COLUMNS
from asmoments.exact import radical_field
from asmoments.polyring import Poly
from fractions import Fraction


def test_divisor_progression_two_left_sides(F3):
    A = Poly(F3, [1, 1])
    r = check_divisor_progression(3, 1, 1, A)
    # leading coefficients are free in the progression: (q - 1) q**(n - d - 1) terms
    assert (r["progression"], r["interval"], r["main"]) == (6, 9, 9)
    r = check_divisor_progression(4, 1, 1, A)
    assert (r["progression"], r["interval"], r["main"]) == (18, 27, 27)
    assert r["k1_exact"]
    r = check_divisor_progression(4, 1, 2, A)
    assert (r["progression"], r["interval"], r["main"]) == (72, 135, 135)


@pytest.mark.parametrize("n,d", [(2, 0), (3, 1), (4, 2), (4, 0)])
def test_divisor_progression_bound(F3, n, d):
    choices = [[1], [2], [2, 1], [1, 2], [1, 0, 1], [2, 1, 1]]
    for A in (Poly(F3, c) for c in choices if len(c) <= d + 1):
        for k in (1, 2, 3):
            r = check_divisor_progression(n, d, k, A)
            assert r["interval_ok"] and r["progression_ok"]
            if k == 1:
                assert r["interval"] == 3 ** (n - d)


def test_divisor_progression_rejects(F3):
    with pytest.raises(RejectedParameterError):
        check_divisor_progression(2, 2, 1, Poly(F3, [1]))
    with pytest.raises(RejectedParameterError):
        check_divisor_progression(3, 1, 1, Poly(F3, [0, 1]))


def test_char_average(F3):
    P = Poly(F3, [2, 1])
    Q = Poly(F3, [0, 1])
    assert check_char_average(F3, 2, [P], [1])["average"] == 0
    assert check_char_average(F3, 2, [P], [3])["average"] == 1
    r = check_char_average(F3, 2, [P, Q], [3, 1])
    assert r["ok"] and r["average"] == 0
    with pytest.raises(RejectedParameterError):
        check_char_average(F3, 2, [P, P], [1, 1])


def test_case_validation():
    assert set(case_ids()) == set(TITLES)
    with pytest.raises(RejectedParameterError):
        VerificationCase("no-such-case")
    with pytest.raises(RejectedParameterError):
        VerificationCase("fe", {}, "fuzzy")
    with pytest.raises(RejectedParameterError):
        VerificationCase("fe", {}, "band")
    with pytest.raises(RejectedParameterError):
        profile_cases("overnight")


def test_profiles_nested():
    smoke, desk, ext = (profile_cases(p) for p in ("smoke", "desk", "extended"))
    assert {c.id for c in smoke} <= {c.id for c in desk}
    assert [c.key() for c in desk] == [c.key() for c in ext[:len(desk)]]
    assert len({c.key() for c in desk}) == len(desk)
    assert {c.id for c in ext} == set(TITLES)


def test_divided_difference():
    xs = [1, 2, 3, 4]
    ys = [x ** 3 - 2 * x for x in xs]
    assert divided_difference(xs, ys) == 1


SMOKE_IDS = ("thm1.1-k1-derived", "thm1.2-prooffinal", "lem3.4", "card-H", "prop2.8", "thm1.2")


@pytest.fixture(scope="module")
def small_report():
    cases = [c for c in profile_cases("smoke") if c.id in SMOKE_IDS]
    return run_cases(cases, profile="smoke")


def test_rows(small_report):
    v = {r["case"]: r["verdict"] for r in small_report["rows"]}
    assert v["thm1.1-k1-derived"] == "pass"
    assert v["thm1.2-prooffinal"] == "pass"
    assert v["lem3.4"] == "pass"
    assert v["card-H"] == "pass"
    card = next(r for r in small_report["rows"] if r["case"] == "card-H")
    assert card["brute"] == 9 and card["formulas"]["printed"] == 3
    assert v["prop2.8"] == "fail"
    assert v["thm1.2"] == "differ"
    assert failed(small_report)


def test_exact_values_round_trip(small_report):
    row = next(r for r in small_report["rows"] if r["case"] == "thm1.1-k1-derived")
    back = json.loads(to_json(small_report))
    brute = parse_exact(back["rows"][small_report["rows"].index(row)]["brute"])
    assert brute == radical_field(3, 3).one()
    assert brute.to_fraction() == Fraction(1)


def test_renderings(small_report):
    md = to_markdown(small_report).splitlines()
    assert all(line.count(" | ") == len(COLUMNS) - 1 for line in md[:2 + len(small_report["rows"])]
               if line.startswith("| "))
    assert md[0].startswith("| case")
    csv_lines = to_csv(small_report).splitlines()
    assert csv_lines[0].split(",") == list(COLUMNS)
    assert len(csv_lines) == 1 + len(small_report["rows"])
    assert "timing" not in json.loads(to_json(small_report, include_timing=False))


def test_empty_report():
    rep = make_report([])
    assert rep["summary"] == {} and not failed(rep)
    assert to_csv(rep).strip() == ",".join(COLUMNS)


def test_deterministic_across_jobs():
    cases = [c for c in profile_cases("smoke") if c.id in ("lem3.4", "card-Fd", "lem-S")]
    a = run_cases(cases, jobs=1)
    b = run_cases(cases, jobs=2)
    assert to_json(deterministic_part(a)) == to_json(deterministic_part(b))


def test_budget_skip():
    c = VerificationCase("thm1.2-direct", {"p": 3, "q": 3, "d": 4})
    row = verify(c, budget=10)
    assert row["verdict"] == "skip"
    assert row["detail"]["reason"] == "budget"
