from fractions import Fraction

import mpmath
import pytest

from asmoments.errors import PoleError, RejectedParameterError
from asmoments.exact import radical_field
from asmoments.formulas import (alpha_1_closed, alpha_k, alpha_k_direct, perron_coeff, perron_partial,
                                prop6_main_term, prop6_main_term_direct, residue_class, rmt_constants,
                                s_ell, s_ell_direct, s_unit, s_unit_direct, thm11_k, thm11_k1_printed,
                                thm12_constant, thm12_direct, thm12_proof_final, thm13_constant,
                                thm13_direct, thm13_printed, thm14_leading, zeta_series, zeta_value)
from asmoments.formulas import euler
from asmoments.formulas.series import Series
from asmoments.formulas.theorems import lemma53_check, odd_orthogonal_sum
from asmoments.gf import make_field
from asmoments.polyring import Poly


def test_residue_class():
    assert residue_class(7, 3) == 1
    assert residue_class(-1, 5) == 4
    assert residue_class(2 * 5 - 2, 3) == 2


def test_s1_value():
    R = radical_field(3, 3)
    assert s_ell(1, 0, 2, R) == R.from_fraction(Fraction(-3, 7))
    assert s_ell_direct(1, 0, 2, R) == R.from_fraction(Fraction(-3, 7))


@pytest.mark.parametrize("p,q", [(3, 3), (3, 9), (5, 5)])
def test_s_closed_forms(p, q):
    R = radical_field(p, q)
    for x in (R.from_int(2), R.q_pow(Fraction(1, 2) - Fraction(1, p)), R.q_pow(1 - Fraction(2, p))):
        for ell in (1, 2, 3):
            for n in range(-1, p + 1):
                assert s_ell(ell, n, x) == s_ell_direct(ell, n, x)
            assert s_ell(ell, -1, x) == s_ell(ell, p - 1, x)


def test_s_derivative_relation():
    # d/dx of the exact rational function by a symmetric difference with tiny rational h
    R = radical_field(3, 3)
    h = Fraction(1, 10 ** 20)
    x0 = Fraction(2)
    for ell in (1, 2):
        for n in range(3):
            up = s_ell(ell, n + 1, R.from_fraction(x0 + h))
            dn = s_ell(ell, n + 1, R.from_fraction(x0 - h))
            deriv = (up - dn) * (1 / (2 * h)) * Fraction(1, ell)
            exact = s_ell(ell + 1, n, R.from_fraction(x0))
            assert abs((deriv - exact).to_fraction()) < Fraction(1, 10 ** 30)


def test_s_pole():
    with pytest.raises(PoleError):
        s_ell(1, 0, radical_field(3, 3).one())


def test_s_unit():
    assert s_unit(0, 3) == 1 and s_unit(1, 3) == 0 and s_unit(7, 5) == 0
    for p in (3, 5, 7):
        for n in range(p + 2):
            assert s_unit(n, p) == s_unit_direct(n, p)


def test_alpha():
    for p, q in ((3, 3), (3, 9), (5, 5)):
        R = radical_field(p, q)
        assert alpha_k(1, 0, p, q) == R.from_int(q) / (R.one() - R.q_pow(Fraction(-p, 2)))
        for ell in range(p):
            assert alpha_k(1, ell, p, q) == alpha_1_closed(ell, p, q)
            assert alpha_k(2, ell, p, q) == alpha_k(2, ell + p, p, q)
    F9 = make_field(3, 2)
    assert alpha_k(2, 1, 3, 9) == alpha_k_direct(2, 1, F9)
    for k in (1, 2, 3):
        for ell in range(3):
            assert alpha_k(k, ell, 3, 3) == alpha_k_direct(k, ell, make_field(3, 1))


def test_thm11_printed_depends_on_floor():
    assert thm11_k1_printed(3, 3, 1) == thm11_k1_printed(3, 3, 2)
    assert thm11_k1_printed(3, 3, 4) == thm11_k1_printed(3, 3, 5)
    assert thm11_k1_printed(3, 3, 2) != thm11_k1_printed(3, 3, 4)


def test_thm11_product_stable():
    a = thm11_k(3, 9, 2, 2, N=20)
    b = thm11_k(3, 9, 2, 2, N=25)
    assert abs(a.approx - b.approx) < 1e-8
    assert b.error <= a.error


def test_thm12_constant_depends_on_residue():
    assert thm12_constant(3, 3, 4) == thm12_constant(3, 3, 7)
    assert thm12_constant(3, 3, 2) == thm12_constant(3, 3, 5)


@pytest.mark.parametrize("d", [2, 4, 5])
def test_thm12_proof_final_equals_diagonal_sum(d):
    assert thm12_proof_final(3, 3, d) == thm12_direct(3, 3, d)


def test_thm13_structure():
    p, q = 3, 3
    R = radical_field(p, q)
    for d in (5, 7):
        assert thm13_constant(p, q, d) == thm13_constant(p, q, d + 2 * p)

        def linear_part(dd):
            return thm13_printed(p, q, dd) - thm13_constant(p, q, dd) * R.q_pow(Fraction(dd * (2 - p), 2 * p))

        slope = (1 - Fraction(1, q)) * (R.one() - R.q_pow(Fraction(-p, 2))) / (R.one() - R.q_pow(Fraction(2 - p, 2)))
        assert linear_part(d + 2 * p) - linear_part(d) == slope * p


@pytest.mark.parametrize("d", [5, 7])
def test_thm13_printed_is_weighted_perp_count(d):
    assert thm13_printed(3, 3, d) == odd_orthogonal_sum(3, 3, d)


def test_thm13_direct_values():
    assert abs(thm13_direct(3, 3, 5).to_complex() - mpmath.mpf("4.154700538379251529")) < 1e-15


def test_thm14_leading():
    for variant in ("printed", "series"):
        v = thm14_leading(3, 3, N=35, variant=variant)
        w = thm14_leading(3, 3, N=40, variant=variant)
        assert v.approx.real > 0 and abs(v.approx.imag) < 1e-20
        assert abs(v.approx - w.approx) < 1e-8 * abs(w.approx)
        assert abs(v.approx - w.approx) <= v.error


def test_lemma53_series_identity():
    F = make_field(3, 1)
    ok, bad = lemma53_check(F, 10, "series")
    assert ok and bad == []


def test_lemma53_printed_factors_first_difference():
    ok, bad = lemma53_check(make_field(3, 1), 10, "printed")
    assert not ok and bad[0] == (2, 3)


def test_G_local_factor():
    q = 3
    u = mpmath.mpf(1) / q ** 2
    spec = euler.G_spec(q, u)
    for n in (1, 2, 3):
        Pn = mpmath.mpf(q) ** n
        assert spec.local(n, "all") == 1 - Pn ** -2 - Pn * (Pn - 1) * Pn ** -4


def test_E_product_against_series():
    F = make_field(3, 1)
    R = radical_field(3, 3)
    u = R.one()
    s = euler.E_series(F, u, 6)
    assert s.c == euler.E_series(F, u, 6, enumerate_primes=True).c
    w = mpmath.mpf("0.01")
    with mpmath.workdps(40):
        series_val = sum(c.to_complex(160) * w ** i for i, c in enumerate(s.c))
        prod = euler.evaluate(euler.E_spec(3, 3, w, 1), 3, 6).value
        assert abs(series_val - prod) < 1e-12


def test_euler_tail_bounds():
    for name, at in (("G", (mpmath.mpf(1) / 9,)), ("E", (mpmath.mpf(1) / 3, 1)), ("thm11k", ())):
        a = euler.euler_eval(name, 3, 3, at, N=10)
        b = euler.euler_eval(name, 3, 3, at, N=20)
        assert abs(a.value - b.value) <= a.tail_bound
        assert b.tail_bound <= a.tail_bound


def test_prop6_main_term_routes(F3):
    x = Poly.x(F3)
    for g in (x * (x - 1), x * (x - 1) * (x + 1), x * x + 1):
        for which in ("d", "d-1"):
            assert prop6_main_term(g, which) == prop6_main_term_direct(g, which)
    with pytest.raises(RejectedParameterError):
        prop6_main_term(x * x)


def test_rmt_constants():
    assert rmt_constants(1) == (1, 1)
    assert rmt_constants(2)[1] == Fraction(1, 3)
    assert rmt_constants(2)[0] == Fraction(1, 12)


def test_zeta_series():
    z = zeta_series(3, 8)
    assert all(perron_coeff(z, n) == 3 ** n for n in range(8))
    assert all(perron_partial(z, n) == (3 ** (n + 1) - 1) // 2 for n in range(8))
    with pytest.raises(PoleError):
        zeta_value(3, Fraction(1, 3))
    assert (z * Series([1, -3], 8)).c == [1] + [0] * 7


@pytest.mark.parametrize("p,e,nmax", [(3, 1, 5), (5, 1, 3), (3, 2, 3)])
def test_split_inert_routes(p, e, nmax):
    from asmoments.chars import quad_split_type
    from asmoments.polyring import irreducibles
    F = make_field(p, e)
    for n in range(1, nmax + 1):
        types = [quad_split_type(Q) for Q in irreducibles(F, n) if Q != Poly.x(F)]
        enumerated = (types.count("split"), types.count("inert"))
        assert enumerated == euler.orbit_split_counts(F.q, n) == euler.quad_count(F.q, n)


def test_L_chi_x_trivial_to_degree_12():
    F = make_field(3, 1)
    assert euler.L_chi_x_series(F, 12, route="orbits").c == [1] + [0] * 12
    assert euler.L_chi_x_series(F, 12, route="counts").c == [1] + [0] * 12
