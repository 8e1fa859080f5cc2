from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kunion.numerics import (
    AlgebraicElement,
    Interval,
    ParameterError,
    PhiContext,
    phi_context,
    refine_phi,
    sign_of,
)

small = st.integers(-50, 50)
ks = st.integers(2, 7)


def elements(k):
    return st.lists(small, min_size=k, max_size=k).map(lambda c: phi_context(k).element(c))


@pytest.mark.parametrize("k, printed", [(2, "0.6180"), (3, "0.6823")])
def test_refine_phi_matches_printed_value(k, printed):
    enc = refine_phi(k, Fraction(1, 10**4))
    assert enc.width <= Fraction(1, 10**4)
    assert abs(enc.mid - Fraction(printed)) < Fraction(1, 10**4)


def test_refine_phi_coarse_bracket_changes_sign():
    enc = refine_phi(2, 1)
    f = lambda x: x * x + x - 1
    assert f(enc.lo) < 0 < f(enc.hi)


@pytest.mark.parametrize("k", range(2, 9))
def test_enclosure_invariants(k):
    enc = refine_phi(k, Fraction(1, 2**40))
    assert Fraction(1, 2) < enc.lo and enc.hi < Fraction(k, k + 1)
    f = Interval.point  # noqa: F841
    lo_val = enc.lo**k + enc.lo - 1
    hi_val = enc.hi**k + enc.hi - 1
    assert lo_val < 0 < hi_val
    # psi = 1 - phi solves (1 - x)^k = x
    psi = Interval(1 - enc.hi, 1 - enc.lo)
    g = (1 - psi) ** k - psi
    assert g.lo <= 0 <= g.hi


def test_enclosures_are_nested():
    outer = refine_phi(4, Fraction(1, 2**10))
    for bits in (12, 20, 33, 64):
        inner = refine_phi(4, Fraction(1, 2**bits))
        assert outer.contains_interval(inner)
        outer = inner


@pytest.mark.parametrize("bad", [0, -1, Fraction(0)])
def test_refine_phi_rejects_nonpositive_eps(bad):
    with pytest.raises(ParameterError):
        refine_phi(3, bad)


@pytest.mark.parametrize("k", [1, 0, -2, 2.5])
def test_invalid_k(k):
    with pytest.raises(ParameterError):
        PhiContext(k)


def test_defining_relation_k2():
    ctx = phi_context(2)
    assert (ctx.alpha() * ctx.phi()).coords == (1, -1)


def test_addition_of_coords():
    ctx = phi_context(2)
    assert (ctx.element([1, 1]) + ctx.element([2, -1])).coords == (3, 0)


def test_phi5_reduction_k4():
    ctx = phi_context(4)
    phi = ctx.phi()
    assert (phi**3 * phi**2).coords == (0, 1, -1, 0)


def test_sign_examples():
    c3, c4 = phi_context(3), phi_context(4)
    assert sign_of(c3.alpha() * 81 - 27) == 1
    assert sign_of(c3.zero()) == 0
    assert sign_of(c4.alpha() * -11904 + 960) == -1


def test_zero_divisor_k5_is_signed_zero():
    # x^5 + x - 1 = (x^2 - x + 1)(x^3 + x^2 - 1); phi_5 is a root of the cubic
    ctx = phi_context(5)
    cubic = ctx.element([-1, 0, 1, 1, 0])
    quad = ctx.element([1, -1, 1, 0, 0])
    assert not cubic.is_structural_zero()
    assert sign_of(cubic) == 0
    assert sign_of(quad) == 1
    assert (cubic * quad).is_structural_zero()


@given(ks.flatmap(lambda k: st.tuples(elements(k), elements(k))))
def test_sign_is_multiplicative(pair):
    a, b = pair
    assert sign_of(a * b) == sign_of(a) * sign_of(b)


@given(ks.flatmap(lambda k: st.tuples(elements(k), elements(k))))
def test_sign_respects_same_sign_sums(pair):
    a, b = pair
    if sign_of(a) == sign_of(b) != 0:
        assert sign_of(a + b) == sign_of(a)


@given(ks.flatmap(elements))
def test_sign_agrees_with_enclosure(a):
    lo, hi = a.enclose(80)
    s = sign_of(a)
    if s > 0:
        assert hi > 0
    elif s < 0:
        assert lo < 0
    else:
        assert lo <= 0 <= hi


@given(ks, st.fractions(max_denominator=10**6))
def test_rational_round_trip(k, r):
    assert phi_context(k).embed(r).as_rational() == r


@given(ks.flatmap(lambda k: st.tuples(elements(k), elements(k), elements(k))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == a.context.zero()


def test_context_mismatch_rejected():
    with pytest.raises((ValueError, TypeError)):
        phi_context(2).phi() + phi_context(3).phi()


def test_interval_arithmetic_is_conservative():
    x = Interval(Fraction(-1, 3), Fraction(1, 2))
    y = x * x - x
    for t in (Fraction(-1, 3), Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        assert t * t - t in y
