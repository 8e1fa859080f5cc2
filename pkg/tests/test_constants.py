import csv
import io
import json
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from kunion import golden
from kunion.constants import (
    BoundQuery,
    ConstantsRow,
    alpha,
    check_table1,
    fixed,
    format_table1,
    frequency_bound,
    limit_ratio,
    lower,
    mid,
    mu,
    phi,
    psi,
    table1,
    to_fraction,
    upper,
    verify_lemma_mu,
    verify_prop_zk,
    z,
)
from kunion.numerics import ParameterError, refine_phi

GOLDEN = (1 + 5**0.5) / 2


def width(x):
    return upper(x) - lower(x)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 8, 16, 100, 1000])
def test_phi_agrees_with_exact_bisection(k):
    exact = refine_phi(k, Fraction(1, 2**60))
    enc = phi(k, 80)
    assert to_fraction(lower(enc)) <= exact.hi and exact.lo <= to_fraction(upper(enc))


@given(st.integers(2, 5000))
def test_phi_agrees_with_brent(k):
    ref = brentq(lambda x: x**k + x - 1, 0.5, 1.0, xtol=1e-15)
    assert abs(float(mid(phi(k, 64))) - ref) < 1e-12


@pytest.mark.parametrize("bits", [64, 128, 200])
def test_phi_enclosure_width_tracks_precision(bits):
    enc = phi(7, bits)
    assert 0 < width(enc) <= mpmath.mpf(2) ** (-bits + 8)


def test_phi_2_is_golden_ratio_conjugate():
    with mpmath.workprec(200):
        assert abs(mid(phi(2)) - (mpmath.sqrt(5) - 1) / 2) < mpmath.mpf(2) ** -120


@pytest.mark.parametrize("x, f", [(-1, -1), (-0.75, Fraction(-3, 4)), (0, 0), (2.5, Fraction(5, 2))])
def test_to_fraction_signs(x, f):
    assert to_fraction(mpmath.mpf(x)) == f


def test_to_fraction_rejects_infinity():
    with pytest.raises(ValueError):
        to_fraction(mpmath.inf)


def test_endpoint_helpers_are_exact():
    x = mpmath.iv.mpf(["0.1", "0.3"])
    lo, hi = to_fraction(lower(x)), to_fraction(upper(x))
    assert lo < Fraction(1, 10) < Fraction(3, 10) < hi or (lo <= Fraction(1, 10) and Fraction(3, 10) <= hi)
    assert to_fraction(mid(x)) == (lo + hi) / 2


@given(st.integers(-(2**150), 2**150), st.integers(-300, 300))
def test_to_fraction_round_trip_dyadic(man, exp):
    f = Fraction(man) * Fraction(2) ** exp
    with mpmath.workprec(200):
        assert to_fraction(mpmath.ldexp(mpmath.mpf(man), exp)) == f


@pytest.mark.parametrize("k", [2, 3, 4])
def test_small_k_identities(k):
    # mu = 1/alpha and z = psi for k <= 4
    assert abs(mid(mu(k)) * mid(alpha(k)) - 1) < 1e-30
    assert abs(mid(z(k)) - mid(psi(k))) < 1e-30


@pytest.mark.parametrize("p", range(3, 12))
def test_mu_at_powers_of_two(p):
    # q = 0 collapses the average to phi_2^(-p)
    assert abs(mid(mu(2**p)) - mpmath.mpf(GOLDEN) ** p) / mpmath.mpf(GOLDEN) ** p < 1e-14


def test_mu_5_value():
    with mpmath.workprec(200):
        f = (mpmath.sqrt(5) - 1) / 2
        assert abs(mid(mu(5)) - (3 / (4 * f**2) + 1 / (4 * f**3))) < 1e-30
    assert abs(float(mid(mu(5))) - 3.02254) < 1e-5


def test_mu_ratio_small_k():
    assert abs(float(mid(mu(2) / mu(3))) - 0.75331) < 1e-5
    assert abs(float(mid(mu(2) / mu(3))) - 0.7523) < 2e-3


@pytest.mark.parametrize("k", [5, 6, 7, 8, 16, 64, 1000])
def test_z_definition(k):
    with mpmath.workprec(200):
        want = 1 - mid(mu(k)) ** (mpmath.mpf(1) / (1 - k))
        assert abs(mid(z(k)) - want) < 1e-25
    assert mid(z(k)) <= mid(psi(k))


def test_limit_ratio_value():
    assert abs(float(mid(limit_ratio())) - math.log(GOLDEN) / math.log(2)) < 1e-15
    assert abs(float(mid(limit_ratio())) - 0.6943) < 1e-4


def test_table_rows_against_printed_cells():
    rows = {r.k: r for r in table1(sorted(golden.TABLE1), 1e-12)}
    off = []
    for k, cells in golden.TABLE1.items():
        for name, text in zip(golden.TABLE1_COLUMNS, cells):
            if abs(Fraction(fixed(rows[k].value(name), 12)) - Fraction(text)) > golden.TABLE1_TOL:
                off.append(f"{name}_{k}")
    assert off == ["alpha_8"]


def test_constants_check_flags_single_cell():
    rep = check_table1()
    bad = [w.expression for w in rep.witnesses if not w.holds]
    assert bad == ["alpha_8"] and not rep.passed
    assert rep.details["largest_gaps"][0][0] == "alpha_8"


def test_table_precision_controls_width():
    (row,) = table1((6,), 1e-20)
    assert all(width(getattr(row, n)) < 1e-20 for n in ("phi", "psi", "z", "alpha", "mu"))
    with pytest.raises(ParameterError):
        table1((6,), 2)
    with pytest.raises(ParameterError):
        table1((1,))


def test_constants_formats():
    rows = table1((2, 3), 1e-8)
    text = format_table1(rows, "text", 1e-6)
    assert "0.618034" in text and "0.682328" in text
    parsed = list(csv.DictReader(io.StringIO(format_table1(rows, "csv", 1e-6))))
    assert parsed[1]["k"] == "3" and parsed[1]["psi"] == "0.317672"
    lines = [json.loads(l) for l in format_table1(rows, "json").splitlines()]
    assert [d["k"] for d in lines] == [2, 3]
    with pytest.raises(ParameterError):
        format_table1(rows, "xml")


@pytest.mark.parametrize("x, d, out", [(0.5, 3, "0.500"), (-1.25, 1, "-1.2"), (1e-9, 4, "0.0000"), (2.5, 0, "2")])
def test_fixed(x, d, out):
    assert fixed(x, d) == out


def test_row_dict():
    d = ConstantsRow.compute(3, 80).to_dict(6)
    assert d["phi"] == "0.682328" and d["k"] == 3 and "phi_enclosure" in d


def test_z_inequalities_only_ratio_limit_fails():
    rep = verify_prop_zk(300, ratio_k=2**12)
    failing = [w.expression for w in rep.witnesses if not w.holds]
    assert failing == [f"z_k/psi_k at k={2**12}"]
    assert all(not v for v in rep.details["failures"].values())


def test_z_inequalities_without_ratio_pass():
    assert verify_prop_zk(200, ratio_k=0).passed


def test_ratio_approaches_limit_slowly():
    lim = float(mid(limit_ratio()))
    gaps = [float(mid(z(2**p, 64) / psi(2**p, 64))) - lim for p in (8, 12, 16, 20)]
    assert all(a > b > 0 for a, b in zip(gaps, gaps[1:]))


def test_mu_ratio_inequality():
    rep = verify_lemma_mu(600)
    assert rep.passed
    assert rep.details["mu_2/mu_3"].startswith("0.7533")
    with pytest.raises(ParameterError):
        verify_lemma_mu(2)


@given(st.integers(2, 12), st.floats(1e-9, 0.49), st.integers(2, 10**9))
def test_bound_properties(k, eps, size):
    r = frequency_bound(BoundQuery(k, eps, size))
    assert r.delta > 0
    assert 0 <= r.guaranteed_fraction <= r.base_constant
    assert r.clamped == (r.base_constant - r.delta <= 0)
    assert r.base_name == ("psi_k" if k <= 4 else "z_k")


@given(st.integers(2, 8), st.floats(1e-8, 0.2), st.floats(1e-8, 0.2), st.integers(2, 10**6))
def test_bound_monotone_in_eps(k, e1, e2, size):
    lo, hi = sorted((e1, e2))
    a = frequency_bound(BoundQuery(k, lo, size)).guaranteed_fraction
    b = frequency_bound(BoundQuery(k, hi, size)).guaranteed_fraction
    assert a >= b


def test_bound_k2_closed_form():
    eps, size = 1e-3, 2**20
    r = frequency_bound(BoundQuery(2, eps, size))
    want = 2 * eps * (1 + math.log(1 / eps) / math.log(size))
    assert abs(float(r.delta) - want) < 1e-15


def test_bound_eps_zero():
    r = frequency_bound(BoundQuery(3, 0, 1024))
    assert r.delta == 0 and abs(float(r.guaranteed_fraction) - 0.317672196) < 1e-9


@pytest.mark.parametrize("args", [(1, 0.1, 10), (3, -0.1, 10), (3, 0.5, 10), (3, 0.1, 1), (3, 0.1, 2.5)])
def test_bound_query_validation(args):
    with pytest.raises(ParameterError):
        BoundQuery(*args)


@pytest.mark.parametrize("p", [20, 26, 33, 40])
def test_enclosures_stay_tight_for_huge_k(p):
    k = 2**p
    assert width(phi(k, 64)) <= mpmath.mpf(2) ** -62
    # psi = 1 - phi keeps the absolute width, so its relative width grows like 1/psi
    assert width(z(k, 64) / psi(k, 64)) < 2 ** -60 / mid(psi(k, 64))


def test_ratio_ladder_monotone_up_to_2_40():
    vals = [mid(z(2**p, 64) / psi(2**p, 64)) for p in range(3, 41)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > mid(limit_ratio(64))
