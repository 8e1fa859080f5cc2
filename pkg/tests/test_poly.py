from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from kunion.numerics import phi_context
from kunion.poly import (
    INF,
    Poly,
    count_roots,
    discriminant,
    isolate_roots,
    poly_gcd,
    resultant,
    sturm_chain,
)

roots_st = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=8), min_size=1, max_size=6)


def from_roots(roots, lc=1):
    p = Poly([Fraction(lc)])
    for r in roots:
        p = p * Poly([-Fraction(r), Fraction(1)])
    return p


def test_eval_and_derivative():
    p = Poly.from_ints([1, -3, 0, 2])  # 2x^3 - 3x + 1
    assert p.degree == 3 and p.lc == 2
    assert p.eval(Fraction(1, 2)) == Fraction(1, 4) - Fraction(3, 2) + 1
    assert p.derivative() == Poly.from_ints([-3, 0, 6])
    assert p.derivative(3) == Poly.from_ints([12])
    assert p.derivative(4).is_zero()


def test_divmod_identity():
    a = Poly.from_ints([3, 1, 4, 1, 5, 9])
    b = Poly.from_ints([2, 7, 1])
    q, r = a.divmod(b)
    assert q * b + r == a and r.degree < b.degree


@given(roots_st)
def test_root_count_matches_construction(roots):
    p = from_roots(roots)
    assert count_roots(p) == (len(set(roots)), len(roots))


@given(roots_st, st.fractions(min_value=-6, max_value=6, max_denominator=5),
       st.fractions(min_value=0, max_value=6, max_denominator=5))
def test_root_count_on_subinterval(roots, lo, width):
    assume(width > 0)
    hi = lo + width
    inside = [r for r in roots if lo < r < hi]
    assert count_roots(from_roots(roots), (lo, hi)) == (len(set(inside)), len(inside))


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=9))
def test_root_count_agrees_with_numpy(coeffs):
    assume(coeffs[-1] != 0)
    p = Poly.from_ints(coeffs)
    assume(poly_gcd(p, p.derivative()).degree == 0)  # squarefree: numpy is reliable
    roots = np.roots(coeffs[::-1])
    real = roots[np.abs(roots.imag) < 1e-9].real
    # skip cases where numpy cannot tell a real pair from a close complex pair
    assume(np.all(np.abs(roots.imag[np.abs(roots.imag) >= 1e-9]) > 1e-6))
    assert count_roots(p).distinct == len(real)


def test_one_sided_endpoint_roots_excluded():
    p = from_roots([0, 0, 1, 2])
    assert count_roots(p, (0, 1)) == (0, 0)
    assert count_roots(p, (0, 2)) == (1, 1)
    assert count_roots(p, (-1, 1)) == (1, 2)
    assert count_roots(p, (-INF, INF)) == (3, 4)
    assert count_roots(p, (0.5, "3")) == (2, 2)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        count_roots(Poly.from_ints([1, 1]), (1, 1))


def test_sturm_chain_ends_in_gcd():
    p = from_roots([1, 1, 1, 3])
    g = sturm_chain(p).gcd
    assert g.monic() == from_roots([1, 1])


@given(roots_st, roots_st, st.integers(1, 4), st.integers(1, 4))
def test_resultant_product_formula(ra, rb, la, lb):
    a, b = from_roots(ra, la), from_roots(rb, lb)
    want = Fraction(la) ** len(rb) * Fraction(lb) ** len(ra)
    for x in ra:
        for y in rb:
            want *= x - y
    assert resultant(a, b) == want


@given(roots_st, st.integers(-4, 4))
def test_discriminant_product_formula(roots, lc):
    assume(lc != 0 and len(roots) >= 2)
    p = from_roots(roots, lc)
    d = len(roots)
    want = Fraction(lc) ** (2 * d - 2)
    for x, y in combinations(roots, 2):
        want *= (x - y) ** 2
    assert discriminant(p) == want


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 30))
def test_quadratic_discriminant(c, b, a):
    assert discriminant(Poly.from_ints([c, b, a])) == b * b - 4 * a * c


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=16), min_size=1, max_size=5, unique=True))
def test_isolation_enclosures(roots):
    p = from_roots(roots) * Poly.from_ints([2, 0, 1])  # x^2 + 2 has no real roots
    eps = Fraction(1, 1000)
    boxes = isolate_roots(p, eps=eps)
    assert len(boxes) == len(roots)
    for (lo, hi), r in zip(sorted(boxes), sorted(roots)):
        assert lo <= r <= hi and hi - lo <= eps


def test_isolate_irrational_root():
    (lo, hi), = isolate_roots(Poly.from_ints([-2, 0, 1]), (0, INF), eps=Fraction(1, 10**9))
    assert lo * lo < 2 < hi * hi and hi - lo <= Fraction(1, 10**9)


def test_algebraic_coefficients_root_count():
    # x - phi_3 has exactly one root in (1/2, 1) and none in (0, 1/2)
    ctx = phi_context(3)
    p = Poly([-ctx.phi(), ctx.one()])
    assert count_roots(p, (Fraction(1, 2), 1)) == (1, 1)
    assert count_roots(p, (0, Fraction(1, 2))) == (0, 0)
    # (x - phi)^2 (x + alpha): discriminant vanishes, double root counted twice
    q = p * p * Poly([ctx.alpha(), ctx.one()])
    assert count_roots(q) == (2, 3)
    assert discriminant(q).sign() == 0


def test_algebraic_resultant_against_rational_image():
    # Res(x^2 - phi, x - 1) = 1 - phi, positive
    ctx = phi_context(4)
    a = Poly([-ctx.phi(), ctx.zero(), ctx.one()])
    b = Poly([-ctx.one(), ctx.one()])
    r = resultant(a, b)
    assert r == ctx.one() - ctx.phi()
    assert r.sign() == 1


int_polys = st.lists(st.integers(-12, 12), min_size=2, max_size=8).filter(lambda c: c[-1] != 0)


@given(int_polys)
def test_discriminant_agrees_with_sympy(coeffs):
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    expr = sum(c * x**i for i, c in enumerate(coeffs))
    assert discriminant(Poly.from_ints(coeffs)) == int(sympy.discriminant(expr, x))


def sylvester_det(a, b):
    """Res(a, b) as the determinant of the Sylvester matrix (coefficients low to high)."""
    sympy = pytest.importorskip("sympy")
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * i + a[::-1] + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b[::-1] + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


@given(int_polys, int_polys)
def test_resultant_agrees_with_sylvester_determinant(ca, cb):
    assert resultant(Poly.from_ints(ca), Poly.from_ints(cb)) == sylvester_det(ca, cb)


@given(int_polys, st.integers(-6, 6), st.integers(1, 6))
def test_root_count_agrees_with_sympy(coeffs, lo, width):
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed(coeffs)), x)
    hi = lo + width
    # sympy counts the closed interval, ours is open
    at_ends = sum(1 for e in (lo, hi) if p.eval(e) == 0)
    assert count_roots(Poly.from_ints(coeffs), (lo, hi)).distinct == p.count_roots(lo, hi) - at_ends
