"""Certified enclosures of phi_k, psi_k, alpha_k, mu_k, z_k and the frequency bound.

Every constant is an ``mpmath.iv`` interval obtained by outward-rounded
arithmetic, so strict inequalities between enclosures are certificates.
"""

from __future__ import annotations

import csv
import io
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import iv

from .numerics import ParameterError
from .reports import PaperCheckReport, SCHEMA_VERSION, fmt_number

__all__ = [
    "DEFAULT_BITS",
    "ConstantsRow",
    "BoundQuery",
    "BoundResult",
    "phi",
    "psi",
    "alpha",
    "mu",
    "z",
    "table1",
    "check_table1",
    "format_table1",
    "verify_prop_zk",
    "verify_lemma_mu",
    "frequency_bound",
    "limit_ratio",
]

DEFAULT_BITS = 128
TABLE1_KSET = (2, 3, 4, 5, 6, 7, 8, 16)


@contextmanager
def ivprec(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def lower(x) -> mpmath.mpf:
    """Exact left endpoint (no rounding to the ambient precision)."""
    return mpmath.mp.make_mpf(x._mpi_[0])


def upper(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[1])


def mid(x) -> mpmath.mpf:
    """Exact midpoint of the enclosure."""
    return mpmath.ldexp(mpmath.fadd(lower(x), upper(x), exact=True), -1)


def to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpf."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)  # ints and floats convert exactly
    if not mpmath.isfinite(x):
        raise ValueError(f"not a finite number: {x}")
    sign, man, exp, _ = x._mpf_  # man_exp drops the sign
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)


def _check_k(k):
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ParameterError(f"k must be an integer >= 2, got {k!r}")


@lru_cache(maxsize=4096)
def phi(k: int, bits: int = DEFAULT_BITS):
    """Enclosure of the root of x^k + x - 1 in (1/2, 1), of width about 2^(1-bits).

    Works with the equivalent g(x) = k log x - log(1 - x), increasing on (0, 1)
    and well conditioned even for huge k.  A bracketing solver on
    [1/2, 1 - 1/(2k)] gives a candidate; the enclosure is accepted only after
    interval evaluation shows g < 0 at its left end and g > 0 at its right end.
    """
    _check_k(k)
    with mpmath.workprec(bits + 32):
        g = lambda x: k * mpmath.log(x) - mpmath.log1p(-x)
        bracket = (mpmath.mpf(0.5), 1 - mpmath.mpf(1) / (2 * k))
        root = mpmath.findroot(g, bracket, solver="illinois", tol=mpmath.mpf(2) ** (-bits - 32),
                               verify=False, maxsteps=400)
        radius = mpmath.mpf(2) ** (-bits)
        for _ in range(64):
            lo, hi = root - radius, root + radius
            with ivprec(bits + 32):
                glo = k * iv.log(iv.mpf(lo)) - iv.log(1 - iv.mpf(lo))
                ghi = k * iv.log(iv.mpf(hi)) - iv.log(1 - iv.mpf(hi))
                if upper(glo) < 0 and lower(ghi) > 0:
                    return iv.mpf([lo, hi])
            radius *= 2
    raise ArithmeticError(f"could not certify phi_{k}")  # pragma: no cover


def psi(k: int, bits: int = DEFAULT_BITS):
    with ivprec(bits + 32):
        return 1 - phi(k, bits)


def alpha(k: int, bits: int = DEFAULT_BITS):
    with ivprec(bits + 32):
        return phi(k, bits) ** (k - 1)


@lru_cache(maxsize=4096)
def mu(k: int, bits: int = DEFAULT_BITS):
    """Lower bound constant for F_k: 1/alpha_k up to k=4, then the phi_2 power average."""
    _check_k(k)
    with ivprec(bits + 32):
        if k <= 4:
            return 1 / alpha(k, bits)
        p = k.bit_length() - 1
        q = k - (1 << p)
        f = phi(2, bits)
        two_p = iv.mpf(1 << p)
        return (two_p - q) / (two_p * f**p) + iv.mpf(q) / (two_p * f ** (p + 1))


def z(k: int, bits: int = DEFAULT_BITS):
    """z_k = 1 - mu_k^(1/(1-k))."""
    _check_k(k)
    with ivprec(bits + 32):
        return 1 - iv.exp(iv.log(mu(k, bits)) / (1 - k))


def limit_ratio(bits: int = DEFAULT_BITS):
    """log(1/phi_2)/log 2, the limit of z_k/psi_k."""
    with ivprec(bits + 32):
        return -iv.log(phi(2, bits)) / iv.log(2)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantsRow:
    k: int
    phi: object
    psi: object
    z: object
    alpha: object
    mu: object
    precision_bits: int = DEFAULT_BITS

    @classmethod
    def compute(cls, k: int, bits: int = DEFAULT_BITS) -> "ConstantsRow":
        return cls(k, phi(k, bits), psi(k, bits), z(k, bits), alpha(k, bits), mu(k, bits), bits)

    def value(self, name: str) -> mpmath.mpf:
        return mid(getattr(self, name))

    def to_dict(self, digits: int = 12) -> dict:
        d = {"type": "ConstantsRow", "schema_version": SCHEMA_VERSION, "k": self.k,
             "precision_bits": self.precision_bits}
        for name in ("phi", "psi", "z", "alpha", "mu"):
            d[name] = fixed(self.value(name), digits)
            d[name + "_enclosure"] = fmt_number(getattr(self, name), digits + 5)
        return d


def _bits_for(tolerance) -> int:
    tolerance = float(tolerance)
    if not 0 < tolerance < 1:
        raise ParameterError(f"tolerance must lie in (0, 1), got {tolerance}")
    return max(53, math.ceil(-math.log2(tolerance)) + 16)


def table1(kset=TABLE1_KSET, precision=1e-10) -> list[ConstantsRow]:
    """Rows (phi, psi, z, alpha, mu) with enclosures narrower than ``precision``."""
    bits = _bits_for(precision)
    for k in kset:
        _check_k(k)
    return [ConstantsRow.compute(k, bits) for k in kset]


def _digits_for(precision) -> int:
    return max(4, math.ceil(-math.log10(float(precision))))


def fixed(x, decimals: int) -> str:
    """x rounded to ``decimals`` places, in plain positional notation."""
    q = to_fraction(x) * 10**decimals
    n = round(q)  # half-even, like mpmath.nint
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**decimals)
    return f"{sign}{whole}.{frac:0{decimals}d}" if decimals else f"{sign}{whole}"


def format_table1(rows: list[ConstantsRow], fmt: str = "text", precision=1e-4) -> str:
    digits = _digits_for(precision)
    cols = ("phi", "psi", "z", "alpha", "mu")
    if fmt == "json":
        return "\n".join(json.dumps(r.to_dict(digits + 1), sort_keys=True) for r in rows) + "\n"
    cell = lambda r, c: fixed(r.value(c), digits)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("k",) + cols)
        for r in rows:
            w.writerow([r.k] + [cell(r, c) for c in cols])
        return buf.getvalue()
    if fmt != "text":
        raise ParameterError(f"unknown format {fmt!r}")
    width = digits + 4
    lines = ["k".rjust(3) + "".join(c.rjust(width) for c in cols)]
    for r in rows:
        lines.append(str(r.k).rjust(3) + "".join(cell(r, c).rjust(width) for c in cols))
    return "\n".join(lines) + "\n"


def check_table1(rows: list[ConstantsRow] | None = None) -> PaperCheckReport:
    """Every printed cell of the constants table within 1e-4 of the certified value."""
    from . import golden

    rows = rows or table1(sorted(golden.TABLE1))
    rep = PaperCheckReport("table-1", "Table 1: phi_k, psi_k, z_k, alpha_k to 1e-4")
    tol = mpmath.mpf(golden.TABLE1_TOL.numerator) / golden.TABLE1_TOL.denominator
    worst = []
    for r in rows:
        printed = golden.TABLE1.get(r.k)
        if printed is None:
            continue
        for name, text in zip(golden.TABLE1_COLUMNS, printed):
            enc = getattr(r, name)
            want = mpmath.mpf(text)
            gap = max(abs(upper(enc) - want), abs(lower(enc) - want))
            rep.add(f"{name}_{r.k}", fixed(mid(enc), 6), f"within 1e-4 of {text}", gap <= tol, r.precision_bits)
            worst.append((gap, f"{name}_{r.k}"))
    worst.sort(reverse=True)
    rep.details["largest_gaps"] = [[name, mpmath.nstr(gap, 4)] for gap, name in worst[:3]]
    return rep


# ---------------------------------------------------------------------------
# propositions
# ---------------------------------------------------------------------------

RATIO_TARGET_K = 2**20
RATIO_TOL = 0.02


def verify_prop_zk(kmax: int, bits: int = 64, ratio_k: int = RATIO_TARGET_K) -> PaperCheckReport:
    """z_k > log k / (3k) and 1/2 < z_k/psi_k <= 1 for 2 <= k <= kmax, plus the limit ratio.

    For k <= 4, z_k = psi_k exactly; there the enclosures must overlap.
    Also checks the psi_k bracket (2 log k)/(3k) <= psi_k < log k / k (k >= 3),
    monotonicity of mu_k, and phi_k < k/(k+1).
    """
    if not isinstance(kmax, int) or kmax < 2:
        raise ParameterError("kmax must be an integer >= 2")
    rep = PaperCheckReport("proposition-5.1", "Proposition 5.1: z_k > log k/(3k), 1/2 < z_k/psi_k <= 1",
                           precision_bits=bits)
    fails = {"z_lower": [], "ratio": [], "psi_bracket": [], "mu_monotone": [], "phi_upper": []}
    worst_ratio = (math.inf, None)
    prev_mu = None
    with ivprec(bits + 32):
        for k in range(2, kmax + 1):
            zk, pk, mk, fk = z(k, bits), psi(k, bits), mu(k, bits), phi(k, bits)
            logk = iv.log(k)
            if not lower(zk) > upper(logk / (3 * k)):
                fails["z_lower"].append(k)
            ratio = zk / pk
            if k <= 4:
                ok = lower(ratio) <= 1 <= upper(ratio)
            else:
                ok = lower(ratio) > 0.5 and upper(ratio) <= 1
            if not ok:
                fails["ratio"].append(k)
            if lower(ratio) < worst_ratio[0]:
                worst_ratio = (lower(ratio), k)
            if k >= 3 and not (lower(pk) >= upper(2 * logk / (3 * k)) and upper(pk) < lower(logk / k)):
                fails["psi_bracket"].append(k)
            if prev_mu is not None and not upper(prev_mu) <= lower(mk):
                fails["mu_monotone"].append(k)
            prev_mu = mk
            if not upper(fk) < mpmath.mpf(k) / (k + 1):
                fails["phi_upper"].append(k)

        rep.add(f"min_k z_k - log k/(3k) > 0, k<={kmax}", f"failures: {fails['z_lower'][:10]}",
                "none", not fails["z_lower"])
        rep.add(f"1/2 < z_k/psi_k <= 1, k<={kmax}", f"min ratio {mpmath.nstr(worst_ratio[0], 8)} at k={worst_ratio[1]}",
                "no failures", not fails["ratio"], bits)
        rep.add(f"(2 log k)/(3k) <= psi_k < log k/k, 3<=k<={kmax}", f"failures: {fails['psi_bracket'][:10]}",
                "none", not fails["psi_bracket"])
        rep.add(f"mu_k nondecreasing, k<={kmax}", f"failures: {fails['mu_monotone'][:10]}",
                "none", not fails["mu_monotone"])
        rep.add(f"phi_k < k/(k+1), k<={kmax}", f"failures: {fails['phi_upper'][:10]}",
                "none", not fails["phi_upper"])

        lim = limit_ratio(bits)
        if ratio_k:
            r = z(ratio_k, bits) / psi(ratio_k, bits)
            gap = abs(mid(r) - mid(lim))
            rep.add(f"z_k/psi_k at k={ratio_k}", r, f"within {RATIO_TOL} of {mpmath.nstr(mid(lim), 6)}",
                    gap + mpmath.mpf(r.delta) < RATIO_TOL, bits)
            rep.details["ratio_at_k"] = {"k": ratio_k, "ratio": mpmath.nstr(mid(r), 10),
                                         "limit": mpmath.nstr(mid(lim), 10), "gap": mpmath.nstr(gap, 6)}
    rep.details["failures"] = {key: v[:50] for key, v in fails.items()}
    return rep


def verify_lemma_mu(kmax: int, bits: int = 64) -> PaperCheckReport:
    """mu_{k-1}/mu_k > (k-1)/k for 3 <= k <= kmax, certified."""
    if not isinstance(kmax, int) or kmax < 3:
        raise ParameterError("kmax must be an integer >= 3")
    rep = PaperCheckReport("lemma-4.3", "Lemma 4.3: mu_{k-m}/(k-m) > mu_k/k", precision_bits=bits)
    failures = []
    tightest = (math.inf, None)
    with ivprec(bits + 32):
        for k in range(3, kmax + 1):
            slack = mu(k - 1, bits) / mu(k, bits) - iv.mpf(k - 1) / k
            if not lower(slack) > 0:
                failures.append(k)
            if lower(slack) < tightest[0]:
                tightest = (lower(slack), k)
        for k in (3, 4, 5):
            if k <= kmax:
                rep.details[f"mu_{k - 1}/mu_{k}"] = mpmath.nstr(mid(mu(k - 1, bits) / mu(k, bits)), 8)
    rep.add(f"mu_(k-1)/mu_k - (k-1)/k > 0, 3<=k<={kmax}",
            f"min slack {mpmath.nstr(tightest[0], 6)} at k={tightest[1]}", "> 0 for every k",
            not failures, bits)
    rep.details["failures"] = failures[:50]
    return rep


# ---------------------------------------------------------------------------
# frequency bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundQuery:
    k: int
    eps: float
    family_size: int

    def __post_init__(self):
        _check_k(self.k)
        if not 0 <= self.eps < 0.5:
            raise ParameterError(f"eps must lie in [0, 1/2), got {self.eps}")
        if not isinstance(self.family_size, int) or self.family_size < 2:
            raise ParameterError("family_size must be an integer >= 2")


@dataclass(frozen=True)
class BoundResult:
    query: BoundQuery
    delta: mpmath.mpf
    base_constant: mpmath.mpf
    base_name: str
    guaranteed_fraction: mpmath.mpf
    clamped: bool
    precision_bits: int

    def to_dict(self, digits: int = 15) -> dict:
        return {
            "type": "BoundResult",
            "schema_version": SCHEMA_VERSION,
            "k": self.query.k,
            "eps": fmt_number(self.query.eps),
            "family_size": self.query.family_size,
            "delta": mpmath.nstr(self.delta, digits),
            "base_constant": mpmath.nstr(self.base_constant, digits),
            "base_name": self.base_name,
            "guaranteed_fraction": mpmath.nstr(self.guaranteed_fraction, digits),
            "clamped": self.clamped,
            "precision_bits": self.precision_bits,
        }


def frequency_bound(q: BoundQuery, bits: int = DEFAULT_BITS) -> BoundResult:
    """delta = (k eps + 2 eps log(1/eps)/log|F|)^(1/(k-1)) and z_k - delta (psi_k for k <= 4).

    For k = 2 the formula is 2 eps (1 + log(1/eps)/log|F|).
    """
    k = q.k
    with mpmath.workprec(bits):
        eps = mpmath.mpf(q.eps)
        if eps == 0:
            delta = mpmath.mpf(0)
        else:
            inner = k * eps + 2 * eps * mpmath.log(1 / eps) / mpmath.log(q.family_size)
            delta = inner ** (mpmath.mpf(1) / (k - 1))
        if k <= 4:
            base, name = mid(psi(k, bits)), "psi_k"
        else:
            base, name = mid(z(k, bits)), "z_k"
        frac = base - delta
        clamped = frac <= 0
        return BoundResult(q, delta, base, name, mpmath.mpf(0) if clamped else frac, clamped, bits)
