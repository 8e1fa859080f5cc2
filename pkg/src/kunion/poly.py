"""Dense univariate polynomials over Q or over Q[x]/(x^k + x - 1).

Coefficients are either ``Fraction``/``int`` or ``AlgebraicElement`` (see
:mod:`kunion.numerics`).  The module only relies on ring operators plus two
duck-typed hooks on non-rational coefficients: ``sign()`` and ``_inverse()``.

Root counting uses a signed remainder (Sturm) sequence.  Every chain element
is rescaled by a positive constant so that its leading coefficient is +-1;
this keeps coefficient growth polynomial and never changes a sign pattern.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Poly",
    "SturmChain",
    "RootCount",
    "derivative",
    "sturm_chain",
    "count_roots",
    "discriminant",
    "resultant",
    "isolate_roots",
    "poly_gcd",
]

INF = math.inf


def _is_rational(c) -> bool:
    return isinstance(c, (int, Fraction))


def coeff_sign(c) -> int:
    if _is_rational(c):
        return (c > 0) - (c < 0)
    return c.sign()


def _is_struct_zero(c) -> bool:
    if _is_rational(c):
        return c == 0
    return c.is_structural_zero()


def _inverse(c):
    if _is_rational(c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(c)
    return c._inverse()


def _zero_like(c):
    if _is_rational(c):
        return Fraction(0)
    return c.context.zero()


class Poly:
    """Polynomial ``sum(coeffs[i] * x**i)``; the zero polynomial has no coeffs."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_struct_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, c, n: int) -> "Poly":
        return cls([_zero_like(c)] * n + [c])

    @classmethod
    def from_ints(cls, coeffs: Sequence[int]) -> "Poly":
        return cls(Fraction(c) for c in coeffs)

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def trimmed(self) -> "Poly":
        """Drop leading coefficients whose value is zero (not just structurally)."""
        cs = list(self.coeffs)
        while cs and coeff_sign(cs[-1]) == 0:
            cs.pop()
        return Poly(cs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        a, b = self.coeffs, other.coeffs
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_struct_zero(x):
                continue
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = _zero_like(a[0])
        return Poly(zero if c is None else c for c in out)

    def __rmul__(self, other):
        return Poly(other * c for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly([Fraction(1)])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "Poly":
        """Multiply by x**n."""
        if self.is_zero():
            return self
        zero = _zero_like(self.coeffs[0])
        return Poly([zero] * n + list(self.coeffs))

    def map(self, fn) -> "Poly":
        return Poly(fn(c) for c in self.coeffs)

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, times: int = 1) -> "Poly":
        p = self
        for _ in range(times):
            p = Poly(c * i for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Exact Horner evaluation."""
        if self.is_zero():
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        if x == INF:
            return self.sign_at_infinity(+1)
        if x == -INF:
            return self.sign_at_infinity(-1)
        return coeff_sign(self.eval(x))

    def sign_at_infinity(self, direction: int) -> int:
        if self.is_zero():
            return 0
        s = coeff_sign(self.lc)
        if direction < 0 and self.degree % 2:
            s = -s
        return s

    def sign_near(self, x, side: int) -> int:
        """Sign of p on (x, x+eps) for side=+1 or (x-eps, x) for side=-1."""
        if x in (INF, -INF):
            return self.sign_at(x)
        q = self
        order = 0
        while not q.is_zero():
            s = coeff_sign(q.eval(x))
            if s:
                return -s if (side < 0 and order % 2) else s
            q = q.derivative()
            order += 1
        return 0

    # -- division ------------------------------------------------------------

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the coefficient field."""
        divisor = divisor.trimmed()
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv = _inverse(divisor.lc)
        rem = list(self.trimmed().coeffs)
        db = divisor.degree
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quot = [None] * (len(rem) - db)
        bc = divisor.coeffs
        while len(rem) - 1 >= db:
            shift = len(rem) - 1 - db
            q = rem[-1] * inv
            quot[shift] = q
            for i in range(db):
                rem[shift + i] = rem[shift + i] - q * bc[i]
            rem.pop()
            while rem and coeff_sign(rem[-1]) == 0:
                rem.pop()
        zero = _zero_like(divisor.lc)
        return Poly(zero if c is None else c for c in quot), Poly(rem)

    def __mod__(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[0]

    def monic(self) -> "Poly":
        p = self.trimmed()
        if p.is_zero():
            return p
        return p * _inverse(p.lc)

    def positive_normalized(self) -> "Poly":
        """Rescale by a positive constant so that the leading coefficient is +-1."""
        p = self.trimmed()
        if p.is_zero():
            return p
        s = coeff_sign(p.lc)
        return p * (_inverse(p.lc) * s)


def derivative(p: Poly, times: int = 1) -> Poly:
    return p.derivative(times)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the coefficient field."""
    a, b = a.trimmed(), b.trimmed()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


# ---------------------------------------------------------------------------
# Sturm sequences and root counting
# ---------------------------------------------------------------------------


class SturmChain:
    """Signed remainder sequence ``p, p', -rem(p, p'), ...``.

    Each element is a positive multiple of the classical Sturm element, so the
    sign-variation difference between two non-root points equals the number of
    distinct real roots between them.  The last element is a gcd of p and p'.
    """

    __slots__ = ("seq",)

    def __init__(self, seq: Sequence[Poly]):
        self.seq = tuple(seq)

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    @property
    def gcd(self) -> Poly:
        return self.seq[-1]

    def variations(self, x, side: int = 0) -> int:
        """Sign changes of the chain at x (or just right/left of x for side=+-1)."""
        if side:
            signs = [q.sign_near(x, side) for q in self.seq]
        else:
            signs = [q.sign_at(x) for q in self.seq]
        signs = [s for s in signs if s]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def count(self, lo, hi) -> int:
        """Distinct real roots in the open interval (lo, hi)."""
        return self.variations(lo, +1) - self.variations(hi, -1)


def sturm_chain(p: Poly) -> SturmChain:
    p = p.trimmed()
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    seq = [p.positive_normalized()]
    dp = p.derivative().trimmed()
    if dp.is_zero():
        return SturmChain(seq)
    seq.append(dp.positive_normalized())
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r.positive_normalized())
    return SturmChain(seq)


class RootCount(NamedTuple):
    distinct: int
    with_multiplicity: int


def _as_endpoint(x):
    if x is None:
        raise ValueError("use math.inf for unbounded endpoints")
    if isinstance(x, float):
        if math.isinf(x):
            return x
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def count_roots(p: Poly, interval=(-INF, INF)) -> RootCount:
    """Real roots of p in an open interval: distinct and counted with multiplicity.

    Endpoints may be rationals or +-inf.  Endpoint roots are excluded; their
    neighbourhood is handled by one-sided signs, so no perturbation is needed.
    """
    lo, hi = (_as_endpoint(x) for x in interval)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    p = p.trimmed()
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    distinct = None
    total = 0
    g = p
    while g.degree >= 1:
        chain = sturm_chain(g)
        n = chain.count(lo, hi)
        if distinct is None:
            distinct = n
        total += n
        if n == 0:
            break
        g = chain.gcd
    return RootCount(distinct or 0, total)


def resultant(a: Poly, b: Poly):
    """Res(a, b) by the Euclidean recurrence over the coefficient field."""
    a, b = a.trimmed(), b.trimmed()
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant with the zero polynomial")
    factor = None  # accumulated scalar, None means 1

    def mul(x, y):
        return y if x is None else x * y

    while True:
        da, db = a.degree, b.degree
        if db == 0:
            res = b.lc**da if da else Fraction(1)
            return res if factor is None else factor * res
        r = a % b
        if r.is_zero():
            return _zero_like(b.lc)
        dr = r.degree
        scal = b.lc ** (da - dr)
        if (da * db) % 2:
            scal = -scal
        factor = mul(factor, scal)
        a, b = b, r


def discriminant(p: Poly):
    """disc(p) = (-1)^(d(d-1)/2) Res(p, p') / lc(p)."""
    p = p.trimmed()
    d = p.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return _inverse(p.lc) * p.lc
    res = resultant(p, p.derivative())
    out = res * _inverse(p.lc)
    if (d * (d - 1) // 2) % 2:
        out = -out
    return out


def _cauchy_bound(p: Poly) -> Fraction:
    """Rational B with every real root in (-B, B)."""
    p = p.trimmed()
    lc_mag = _magnitude_bounds(p.lc)[0]
    top = max((_magnitude_bounds(c)[1] for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + top / lc_mag + 1


def _magnitude_bounds(c) -> tuple[Fraction, Fraction]:
    """(lower, upper) bounds on |c|; lower > 0 for nonzero c."""
    if _is_rational(c):
        a = abs(Fraction(c))
        return a, a
    return c.magnitude_bounds()


def isolate_roots(p: Poly, interval=(-INF, INF), eps=Fraction(1, 10**6)):
    """Disjoint rational enclosures ``(lo, hi)`` of the distinct real roots.

    Each returned pair has width <= eps and contains exactly one root; a pair
    with ``lo == hi`` is an exact rational root.
    """
    eps = _as_endpoint(eps)
    lo, hi = (_as_endpoint(x) for x in interval)
    p = p.trimmed()
    chain = sturm_chain(p)
    bound = _cauchy_bound(p)
    lo = max(lo, -bound) if lo == -INF else lo
    hi = min(hi, bound) if hi == INF else hi
    out = []
    stack = [(lo, hi, chain.count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and b - a <= eps:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if p.sign_at(m) == 0:
            out.append((m, m))
        stack.append((m, b, chain.count(m, b)))
        stack.append((a, m, chain.count(a, m)))
    out.sort()
    return out
