"""Exact arithmetic around phi_k, the positive root of x^k + x - 1.

Elements of Q[x]/(x^k + x - 1) are stored as integer numerators over one
common positive denominator.  Signs are decided at phi_k: first from a dyadic
enclosure of phi_k, and when that is inconclusive by an exact zero test
(gcd with x^k + x - 1 followed by a Sturm count on the enclosure).

x^k + x - 1 is squarefree for every k (a common root with k x^(k-1) + 1 would
have to be x = k/(k-1) > 1, where the polynomial is positive), so every
element that is nonzero at phi_k is eventually separated from 0.  It is not
always irreducible (x^2 - x + 1 divides it for k = 5 mod 6), which is why the
zero test never assumes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import Poly, poly_gcd, sturm_chain

__all__ = [
    "Interval",
    "PhiContext",
    "AlgebraicElement",
    "ParameterError",
    "phi_context",
    "refine_phi",
    "phi_bracket",
    "sign_of",
]

START_BITS = 32


class ParameterError(ValueError):
    """Invalid k, precision or tolerance."""


@dataclass(frozen=True)
class Interval:
    """Closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def sign(self) -> int | None:
        """+1/-1 if the interval excludes 0, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return Interval.point(1)
        a, b = self.lo**n, self.hi**n
        if n % 2 == 0 and self.lo <= 0 <= self.hi:
            return Interval(Fraction(0), max(a, b))
        return Interval(min(a, b), max(a, b))

    def eval_poly(self, coeffs: Sequence) -> "Interval":
        """Horner interval extension of sum(coeffs[i] x^i) over this interval."""
        acc = Interval.point(0)
        for c in reversed(coeffs):
            acc = acc * self + c
        return acc

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"


def _check_k(k) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ParameterError(f"k must be an integer >= 2, got {k!r}")
    return k


def _defining_sign(k: int, m: int, bits: int) -> int:
    """Sign of x^k + x - 1 at x = m / 2^bits."""
    v = m**k + (m << (bits * (k - 1))) - (1 << (bits * k))
    return (v > 0) - (v < 0)


_BRACKETS: dict[int, tuple[int, int]] = {}


def phi_bracket(k: int, bits: int) -> int:
    """Integer m with m/2^bits < phi_k < (m+1)/2^bits."""
    _check_k(k)
    if bits < 1:
        raise ParameterError("bits must be >= 1")
    best_bits, m = _BRACKETS.get(k, (1, 1))  # phi_k in (1/2, 1)
    if best_bits > bits:
        return m >> (best_bits - bits)
    b = best_bits
    while b < bits:
        m, b = 2 * m, b + 1
        if _defining_sign(k, m + 1, b) < 0:
            m += 1
    _BRACKETS[k] = (b, m)
    return m


def phi_enclosure(k: int, bits: int) -> Interval:
    m = phi_bracket(k, bits)
    return Interval(Fraction(m, 1 << bits), Fraction(m + 1, 1 << bits))


def refine_phi(k: int, eps) -> Interval:
    """Enclosure of phi_k of width <= eps, by bisection from [1/2, 1]."""
    _check_k(k)
    eps = Fraction(eps)
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    if eps >= Fraction(1, 2):
        return Interval(Fraction(1, 2), Fraction(1))
    bits = 1
    while Fraction(1, 1 << bits) > eps:
        bits += 1
    return phi_enclosure(k, bits)


class PhiContext:
    """The ring Q[x]/(x^k + x - 1) together with an isolating interval of phi_k."""

    __slots__ = ("k", "precision_bits", "_defining")

    def __init__(self, k: int, precision_bits: int = START_BITS):
        self.k = _check_k(k)
        self.precision_bits = precision_bits
        self._defining = None

    @property
    def enclosure(self) -> Interval:
        return phi_enclosure(self.k, self.precision_bits)

    @property
    def defining_poly(self) -> Poly:
        if self._defining is None:
            self._defining = Poly.from_ints([-1, 1] + [0] * (self.k - 2) + [1])
        return self._defining

    def refined(self, bits: int) -> "PhiContext":
        return PhiContext(self.k, bits)

    def __eq__(self, other):
        return isinstance(other, PhiContext) and other.k == self.k

    def __hash__(self):
        return hash(("PhiContext", self.k))

    def __repr__(self):
        return f"PhiContext(k={self.k})"

    # constructors
    def element(self, coords: Iterable) -> "AlgebraicElement":
        return AlgebraicElement.from_coords(self, coords)

    def zero(self) -> "AlgebraicElement":
        return AlgebraicElement(self, (0,) * self.k, 1)

    def one(self) -> "AlgebraicElement":
        return self.embed(1)

    def embed(self, r) -> "AlgebraicElement":
        r = Fraction(r)
        return AlgebraicElement(self, (r.numerator,) + (0,) * (self.k - 1), r.denominator)

    def phi(self) -> "AlgebraicElement":
        return self.element([0, 1] + [0] * (self.k - 2))

    def alpha(self) -> "AlgebraicElement":
        """alpha_k = phi_k^(k-1)."""
        return self.element([0] * (self.k - 1) + [1])


@lru_cache(maxsize=None)
def phi_context(k: int) -> PhiContext:
    return PhiContext(k)


def _reduce(num: list[int], k: int) -> list[int]:
    """Reduce an integer coefficient list modulo x^k + x - 1 (x^k = 1 - x)."""
    for d in range(len(num) - 1, k - 1, -1):
        c = num[d]
        if c:
            num[d - k] += c
            num[d - k + 1] -= c
    del num[k:]
    return num


class AlgebraicElement:
    """c_0 + c_1 phi + ... + c_{k-1} phi^(k-1), reduced modulo x^k + x - 1."""

    __slots__ = ("context", "num", "den", "_sign")

    def __init__(self, context: PhiContext, num: Sequence[int], den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(n // g for n in num)
            den //= g
        self.context = context
        self.num = tuple(num)
        self.den = den
        self._sign = None

    @classmethod
    def from_coords(cls, context: PhiContext, coords: Iterable) -> "AlgebraicElement":
        fr = [Fraction(c) for c in coords]
        den = math.lcm(1, *(c.denominator for c in fr))
        num = [c.numerator * (den // c.denominator) for c in fr]
        if len(num) < context.k:
            num += [0] * (context.k - len(num))
        elif len(num) > context.k:
            num = _reduce(num, context.k)
        return cls(context, num, den)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.num)

    @property
    def k(self) -> int:
        return self.context.k

    def is_structural_zero(self) -> bool:
        return not any(self.num)

    def as_rational(self) -> Fraction:
        if any(self.num[1:]):
            raise ValueError("element is not a rational constant")
        return Fraction(self.num[0], self.den)

    def as_poly(self) -> Poly:
        return Poly(self.coords)

    # -- ring operations ----------------------------------------------------

    def _lift(self, other) -> "AlgebraicElement":
        if isinstance(other, AlgebraicElement):
            if other.context.k != self.context.k:
                raise ValueError(
                    f"context mismatch: k={self.context.k} vs k={other.context.k}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.embed(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return AlgebraicElement(self.context, [a + b for a, b in zip(self.num, o.num)], self.den)
        d = self.den * o.den
        return AlgebraicElement(
            self.context,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement(self.context, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgebraicElement(self.context, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            n, d = other.numerator, other.denominator
            return AlgebraicElement(self.context, [a * n for a in self.num], self.den * d)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        k = self.context.k
        a, b = self.num, o.num
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return AlgebraicElement(self.context, _reduce(prod, k), self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not part of the ring API")
        result = self.context.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.embed(other)
        if not isinstance(other, AlgebraicElement):
            return NotImplemented
        return (
            self.context.k == other.context.k
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.context.k, self.num, self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*phi^{i}")
        return f"<{' + '.join(terms) or '0'} (k={self.context.k})>"

    # -- sign determination ---------------------------------------------------

    def enclose(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational bounds on the value at phi_k from a 2^-bits enclosure.

        phi_k > 0, so each monomial is monotone on the enclosure and the bounds
        are exact per term (no Horner dependency loss).
        """
        k = self.context.k
        m = phi_bracket(k, bits)
        lo_pows = [1] * k
        hi_pows = [1] * k
        for i in range(1, k):
            lo_pows[i] = lo_pows[i - 1] * m
            hi_pows[i] = hi_pows[i - 1] * (m + 1)
        lo = hi = 0
        for i, c in enumerate(self.num):
            if not c:
                continue
            scale = 1 << (bits * (k - 1 - i))
            if c > 0:
                lo += c * lo_pows[i] * scale
                hi += c * hi_pows[i] * scale
            else:
                lo += c * hi_pows[i] * scale
                hi += c * lo_pows[i] * scale
        d = self.den << (bits * (k - 1))
        return Fraction(lo, d), Fraction(hi, d)

    def _vanishes_at_phi(self) -> bool:
        ctx = self.context
        g = poly_gcd(self.as_poly(), ctx.defining_poly)
        if g.degree < 1:
            return False
        enc = phi_enclosure(ctx.k, max(ctx.precision_bits, 2))
        return sturm_chain(g).count(enc.lo, enc.hi) == 1

    def sign(self) -> int:
        if self._sign is not None:
            return self._sign
        if not any(self.num):
            self._sign = 0
            return 0
        bits = self.context.precision_bits
        lo, hi = self.enclose(bits)
        if lo <= 0 <= hi:
            if self._vanishes_at_phi():
                self._sign = 0
                return 0
            while lo <= 0 <= hi:
                bits *= 2
                lo, hi = self.enclose(bits)
        self._sign = 1 if lo > 0 else -1
        return self._sign

    def magnitude_bounds(self) -> tuple[Fraction, Fraction]:
        s = self.sign()
        if s == 0:
            return Fraction(0), Fraction(0)
        bits = self.context.precision_bits
        lo, hi = self.enclose(bits)
        while lo <= 0 <= hi:
            bits *= 2
            lo, hi = self.enclose(bits)
        return (lo, hi) if s > 0 else (-hi, -lo)

    def __float__(self):
        lo, hi = self.enclose(64)
        return float((lo + hi) / 2)

    def _inverse(self) -> "AlgebraicElement":
        """Element b with a(phi) * b(phi) = 1.

        When multiplication by a is invertible modulo f = x^k + x - 1 this is
        the ordinary inverse, found by a fraction-free integer solve.  Otherwise
        (f reducible and sharing a factor with a) it is the inverse modulo
        f / gcd(a, f), which still vanishes at phi_k.  Internal: used by the
        polynomial Euclidean steps, not part of the ring API.
        """
        if self.sign() == 0:
            raise ZeroDivisionError("element vanishes at phi_k")
        sol = _solve_unit(self.num, self.context.k)
        if sol is not None:
            num, det = sol
            # (num/den)^-1 = den * M^-1 e0
            if det < 0:
                num, det = [-x for x in num], -det
            return AlgebraicElement(self.context, [x * self.den for x in num], det)
        return self._inverse_mod_factor()

    def _inverse_mod_factor(self) -> "AlgebraicElement":
        ctx = self.context
        a = self.as_poly()
        f = ctx.defining_poly
        g = poly_gcd(a, f)
        m = f // g if g.degree >= 1 else f
        # extended Euclid: s*a = r (mod m)
        r0, r1 = m, a % m
        s0, s1 = Poly(), Poly([Fraction(1)])
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        inv = s0 * (1 / r0.lc)
        return ctx.element(list(inv.coeffs) or [0])


def _solve_unit(num: Sequence[int], k: int) -> tuple[list[int], int] | None:
    """Solve M b = e_0 for the multiplication-by-num matrix M modulo x^k + x - 1.

    Returns (numerators, det) with b = numerators / det, or None if M is
    singular.  Bareiss elimination keeps every intermediate an integer.
    """
    cols = []
    col = list(num)
    for _ in range(k):
        cols.append(col)
        # multiply by x: shift up, then x^k = 1 - x
        top = col[-1]
        col = [0] + col[:-1]
        col[0] += top
        col[1] -= top
    # augmented rows: M[i][j] = cols[j][i]
    rows = [[cols[j][i] for j in range(k)] + [1 if i == 0 else 0] for i in range(k)]
    prev = 1
    for c in range(k):
        piv = next((r for r in range(c, k) if rows[r][c]), None)
        if piv is None:
            return None
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
        pr = rows[c]
        pc = pr[c]
        for r in range(c + 1, k):
            row = rows[r]
            rc = row[c]
            for j in range(c + 1, k + 1):
                row[j] = (row[j] * pc - pr[j] * rc) // prev
            row[c] = 0
        prev = pc
    det = rows[k - 1][k - 1]
    # back substitution: x_i = (det * b_i - sum) / pivot_i keeps integers
    x = [0] * k
    for i in range(k - 1, -1, -1):
        acc = rows[i][k] * det
        for j in range(i + 1, k):
            acc -= rows[i][j] * x[j]
        q, r = divmod(acc, rows[i][i])
        if r:
            return _solve_fraction(rows, k)
        x[i] = q
    return x, det


def _solve_fraction(rows, k):
    x = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        acc = Fraction(rows[i][k])
        for j in range(i + 1, k):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    den = math.lcm(*(v.denominator for v in x))
    return [int(v * den) for v in x], den


def sign_of(a: AlgebraicElement) -> int:
    """Sign of a(phi_k) in {-1, 0, +1}."""
    return a.sign()
