import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from kunion import golden
from kunion.numerics import ParameterError
from kunion.paperpoly import (
    build_p,
    build_rho,
    build_sigma,
    c_coeff,
    _ab_element,
    c_table,
    check_p0_sign,
    check_table2,
    derivative_root_pattern,
    discriminant_report,
    discriminant_sign_pattern,
    format_ab,
    golden_poly,
    r_deriv_closed,
    r_deriv_general,
    rho_terms_in_y,
    root_count_report,
    s_deriv_closed,
    s_deriv_general,
    sigma_sign_profile,
    unit_interval_root_count,
    verify_appendix_a,
    verify_sr_derivative_identity,
)


def falling(a, n):
    out = 1
    for i in range(n):
        out *= a - i
    return out


@given(st.integers(2, 7), st.integers(0, 12), st.integers(0, 10))
def test_c_coeff_monomial_identity(k, t, m):
    # h(y) = y^m: d^t/dx^t x^(km) = (km)_t x^(km-t) and h^(j)(x^k) x^(kj-t) = (m)_j x^(km-t)
    total = sum(c_coeff(k, t, j) * math.factorial(k - 1) * falling(m, j) for j in range(t + 1))
    assert total == falling(k * m, t)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_c_table_recurrence(k):
    assert c_table(k, 10).recurrence_holds()


def test_c_coeff_rejects_negative():
    with pytest.raises(ParameterError):
        c_coeff(3, -1, 0)


@pytest.mark.parametrize("k", range(2, 7))
def test_generated_p_matches_golden_rows(k):
    assert build_p(k) == golden_poly(k, golden.TABLE2[k])
    rep = check_table2(k)
    assert rep.passed, rep.to_dict()


def test_golden_rows_limited_range():
    with pytest.raises(ParameterError):
        check_table2(7)


@pytest.mark.parametrize("k", range(2, 9))
def test_degree_and_constant_terms(k):
    p = build_p(k)
    assert p.degree == k * k - 1
    assert build_sigma(k)[0] == (-1) ** (k + 1) * k
    assert build_rho(k)[0] == (-1) ** (k + 1) * k * k
    assert check_p0_sign(k).passed


@pytest.mark.parametrize("k", range(2, 9))
def test_rho_is_polynomial_in_xk(k):
    assert rho_terms_in_y(k) >= 1
    assert all(c == 0 for i, c in enumerate(build_rho(k).coeffs) if i % k)


@pytest.mark.parametrize("k", range(2, 9))
def test_sigma_all_but_one_same_sign(k):
    assert sigma_sign_profile(k)["all_but_one_same_sign"]


@pytest.mark.parametrize("a, b, text", [
    (0, 1, "1*alpha"), (3, -2, "3 - 2*alpha"), (Fraction(1, 2), 5, "1/2 + 5*alpha"), (7, 0, "7"),
])
def test_format_ab(a, b, text):
    assert format_ab(_ab_element(3, a, b)) == text


def _mp_poly_value(k, x):
    p = build_p(k)
    alpha = mpmath.mpf(1) / mpmath.findroot(lambda t: t**k + t - 1, (0.5, 1), solver="illinois") - 1
    total = mpmath.mpf(0)
    for i, c in enumerate(p.coeffs):
        a, b = c.coords[0], c.coords[k - 1]
        total += (mpmath.mpf(a.numerator) / a.denominator + alpha * mpmath.mpf(b.numerator) / b.denominator) * x**i
    return total


@pytest.mark.parametrize("k", range(2, 7))
def test_unit_interval_roots_against_sign_changes(k):
    # numeric oracle: sign changes on a fine grid of (0, 1)
    with mpmath.workprec(200):
        vals = [_mp_poly_value(k, mpmath.mpf(i) / 2000) for i in range(1, 2000)]
    changes = sum(1 for a, b in zip(vals, vals[1:]) if a * b < 0)
    assert tuple(unit_interval_root_count(k)) == (changes, changes) == (2, 2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_root_count_report_small_k(k):
    rep = root_count_report(k)
    assert rep.passed and rep.claim_id.endswith(f"k{k}")


def test_root_count_report_evidence_k5():
    rep = root_count_report(5)
    assert rep.passed and rep.details["with_multiplicity"] <= 2


def test_p4_pattern_and_discriminants():
    assert tuple(derivative_root_pattern(4)) == golden.P4_ROOT_PATTERN
    assert tuple(discriminant_sign_pattern(4)) == golden.P4_DISCRIMINANT_SIGNS
    assert discriminant_report(4).passed
    assert discriminant_report(3).passed


def test_p3_p4_derivative_checks():
    rep = verify_appendix_a()
    assert rep.passed, [w for w in rep.to_dict()["witnesses"] if not w["holds"]]
    assert rep.details["p4_d6_roots_below_m0.2"] == 1


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("x", [Fraction(1, 7), Fraction(3, 10), Fraction(5, 6)])
def test_closed_forms_agree_with_expansions(k, x):
    assert s_deriv_closed(k, x) == s_deriv_general(k, k + 1, x)
    assert r_deriv_closed(k, x) == r_deriv_general(k, k + 1, x)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_closed_forms_against_symbolic_derivatives(k):
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x", positive=True)
    h = lambda u: -u * sympy.log(u) - (1 - u) * sympy.log(1 - u)
    s = sympy.diff(x ** (k - 1) * h(x), x, k + 1)
    r = sympy.diff(h(x**k), x, k + 1)
    pt = Fraction(3, 10)
    at = sympy.Rational(3, 10)
    for expr, exact in ((s, s_deriv_closed(k, pt)), (r, r_deriv_closed(k, pt))):
        val = sympy.N(expr.subs(x, at), 60)
        assert abs(val - sympy.Rational(exact.numerator, exact.denominator)) < sympy.Float("1e-45")


@pytest.mark.parametrize("k", range(2, 7))
def test_derivative_identity_exact(k):
    rep = verify_sr_derivative_identity(k, (Fraction(3, 10), Fraction(2, 3)))
    assert rep.passed, [w for w in rep.to_dict()["witnesses"] if not w["holds"]]


def test_derivative_identity_rejects_bad_points():
    with pytest.raises(ParameterError):
        verify_sr_derivative_identity(3, (Fraction(3, 2),))
