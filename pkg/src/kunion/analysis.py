"""Entropy-side functions and the inequalities built from them.

Two evaluation layers are used throughout: vectorised float64 numpy for
sampling and grids, and mpmath (points) / mpmath.iv (cells) for anything
that has to be certified.  Float hits that look like violations are always
re-evaluated at high precision before being counted.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
from mpmath import iv
from scipy import optimize

from . import constants
from .constants import ivprec, lower, mid, upper
from .numerics import ParameterError
from .reports import PaperCheckReport

__all__ = [
    "RealEval",
    "PointK",
    "JointDistribution",
    "h",
    "h_np",
    "f_k",
    "f_k_np",
    "F_k",
    "g",
    "m_k",
    "m_k_np",
    "f_k_certified",
    "fk_scan",
    "write_scan_csv",
    "verify_fk_nonneg",
    "verify_lemma_cl",
    "verify_corollary_main",
    "minimize_m_k",
    "MinimizeResult",
    "entropy",
    "verify_lemma_main_small",
]

DEFAULT_BITS = 128
ZERO_BITS = 256
RECHECK_BITS = 128


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _check_k(k):
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ParameterError(f"k must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class RealEval:
    value: mpmath.mpf
    error_bound: mpmath.mpf

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be nonnegative")

    @classmethod
    def from_interval(cls, x) -> "RealEval":
        return cls(mid(x), (upper(x) - lower(x)) / 2)

    def certainly_positive(self) -> bool:
        return self.value - self.error_bound > 0


# ---------------------------------------------------------------------------
# scalar functions
# ---------------------------------------------------------------------------


def h(x):
    """Binary entropy (natural log), extended to all reals; h(0) = h(1) = 0."""
    x = _mpf(x)
    if x == 0 or x == 1:
        return mpmath.mpf(0)
    return -x * mpmath.log(abs(x)) - (1 - x) * mpmath.log(abs(1 - x))


def h_np(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(x == 0, 0.0, -x * np.log(np.abs(x)))
        b = np.where(x == 1, 0.0, -(1 - x) * np.log(np.abs(1 - x)))
    return a + b


def _alpha_mp(k):
    return mid(constants.alpha(k, mpmath.mp.prec + 16))


def f_k(k: int, x):
    """alpha_k h(x^k) - x^(k-1) h(x)."""
    _check_k(k)
    x = _mpf(x)
    return _alpha_mp(k) * h(x**k) - x ** (k - 1) * h(x)


def f_k_np(k: int, x, alpha=None):
    x = np.asarray(x, dtype=float)
    a = float(mid(constants.alpha(k, 64))) if alpha is None else alpha
    return a * h_np(x**k) - x ** (k - 1) * h_np(x)


def F_k(k: int, x):
    """h(x^k) / (x^(k-1) h(x)) on (0, 1)."""
    _check_k(k)
    x = _mpf(x)
    if not 0 < x < 1:
        raise ParameterError("F_k is defined on (0, 1)")
    return h(x**k) / (x ** (k - 1) * h(x))


def g(x):
    """h(x)/x on (0, 1]."""
    x = _mpf(x)
    if not 0 < x <= 1:
        raise ParameterError("g is defined on (0, 1]")
    return h(x) / x


@dataclass(frozen=True)
class PointK:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ParameterError("a point needs at least one coordinate")
        for c in self.coords:
            if not 0 <= c <= 1:
                raise ParameterError(f"coordinate {c} outside [0, 1]")

    @property
    def k(self) -> int:
        return len(self.coords)


def m_k(point) -> mpmath.mpf:
    """g(prod x) / sum g(x_i), extended continuously to the closed cube.

    Any zero coordinate, or at most one coordinate different from 1, gives 1;
    otherwise coordinates equal to 1 are dropped.
    """
    if not isinstance(point, PointK):
        point = PointK(point)
    xs = [_mpf(c) for c in point.coords]
    k = len(xs)
    if any(x == 0 for x in xs):
        return mpmath.mpf(1)
    rest = [x for x in xs if x != 1]
    if k - len(rest) >= k - 1:
        return mpmath.mpf(1)
    return g(mpmath.fprod(rest)) / mpmath.fsum(g(x) for x in rest)


def m_k_np(x):
    """Interior M_k for an array of shape (..., k)."""
    x = np.asarray(x, dtype=float)
    gx = h_np(x) / x
    p = np.prod(x, axis=-1)
    return (h_np(p) / p) / gx.sum(axis=-1)


# ---------------------------------------------------------------------------
# interval versions for certification
# ---------------------------------------------------------------------------


def _h_iv(x):
    # x strictly inside (0, 1)
    return -x * iv.log(x) - (1 - x) * iv.log(1 - x)


def _dh_iv(x):
    return iv.log(1 - x) - iv.log(x)


def _f_iv(k, x, a):
    return a * _h_iv(x**k) - x ** (k - 1) * _h_iv(x)


def _df_iv(k, x, a):
    xk1 = x ** (k - 1)
    return a * k * xk1 * _dh_iv(x**k) - (k - 1) * x ** (k - 2) * _h_iv(x) - xk1 * _dh_iv(x)


def f_k_certified(k: int, x, bits: int = DEFAULT_BITS) -> RealEval:
    """Enclosure of f_k at a point of (0, 1), alpha_k included as an interval."""
    _check_k(k)
    with ivprec(bits):
        xi = iv.mpf(_mpf(x)) if not isinstance(x, Fraction) else iv.mpf(x.numerator) / x.denominator
        return RealEval.from_interval(_f_iv(k, xi, constants.alpha(k, bits)))


@dataclass
class _CellStats:
    certified: int = 0
    inconclusive: list = field(default_factory=list)
    min_lower: mpmath.mpf = mpmath.inf
    negative: list = field(default_factory=list)


def _certify_range(k, lo, hi, a, max_depth, stats: _CellStats):
    """Mean-value-form positivity of f_k on [lo, hi], bisecting as needed."""
    stack = [(mpmath.mpf(lo), mpmath.mpf(hi), 0)]
    while stack:
        a0, b0, depth = stack.pop()
        X = iv.mpf([a0, b0])
        m = (a0 + b0) / 2
        fm = _f_iv(k, iv.mpf(m), a)
        if upper(fm) < 0:
            stats.negative.append((a0, b0))
            continue
        enc = fm + _df_iv(k, X, a) * (X - m)
        lo_val = lower(enc)
        if lo_val > 0:
            stats.certified += 1
            stats.min_lower = min(stats.min_lower, lo_val)
        elif depth >= max_depth:
            stats.inconclusive.append((a0, b0))
        else:
            stack.append((m, b0, depth + 1))
            stack.append((a0, m, depth + 1))


def fk_scan(k: int, grid_size: int = 1001):
    """Rows (x, f_k(x)) on a uniform grid of [0, 1], float64."""
    x = np.linspace(0.0, 1.0, grid_size)
    return list(zip(x.tolist(), f_k_np(k, x).tolist()))


def write_scan_csv(path, rows, header=("x", "f_k")):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for x, y in rows:
            w.writerow((repr(x), repr(y)))


GRID_FLOOR = -1e-12
ZERO_TOL = 1e-20


def verify_fk_nonneg(k: int, grid_size: int = 100_000, exclusion_radius: float = 1e-3,
                     max_depth: int = 48, bits: int = DEFAULT_BITS) -> PaperCheckReport:
    """f_k >= 0 on [0, 1]: float grid, certified cells away from {0, phi_k, 1}, zero at phi_k."""
    _check_k(k)
    if grid_size < 1000:
        raise ParameterError("grid_size must be >= 1000")
    if not 0 < exclusion_radius < 0.05:
        raise ParameterError("exclusion_radius must lie in (0, 0.05)")
    rep = PaperCheckReport(f"conjecture-3.2-k{k}", "Conjecture 3.2 / Corollary 3.14: f_k >= 0 on [0,1]",
                           precision_bits=bits)
    phi_mid = mid(constants.phi(k, bits))
    r = exclusion_radius

    # (a) grid
    x = np.linspace(0.0, 1.0, grid_size)
    fx = f_k_np(k, x)
    i = int(np.argmin(fx))
    rep.add(f"min f_{k} on {grid_size}-point grid", float(fx[i]), f">= {GRID_FLOOR}",
            fx[i] >= GRID_FLOOR, 53)
    rep.details["grid_argmin"] = repr(float(x[i]))
    near = (x < r) | (np.abs(x - float(phi_mid)) < r) | (x > 1 - r)
    rep.details["heuristic_only_neighborhoods"] = {
        "radius": repr(r),
        "grid_min_inside": repr(float(fx[near].min())),
    }
    # empirical positivity radius at 0: first grid point where f_k stops being positive
    interior = fx[1:]
    stop = np.flatnonzero(interior <= 0)
    rep.details["positive_on_(0,eps)_grid_eps"] = repr(float(x[1 + stop[0]]) if stop.size else 1.0)

    # (b) certified cells
    stats = _CellStats()
    with ivprec(bits):
        a = constants.alpha(k, bits)
        for lo, hi in ((r, phi_mid - r), (phi_mid + r, 1 - r)):
            _certify_range(k, lo, hi, a, max_depth, stats)
    rep.add(f"certified cells of [{r}, 1-{r}] minus ({r}-ball at phi_{k})", stats.certified,
            "every cell has f_k > 0", not stats.negative and not stats.inconclusive, bits)
    rep.details["certified_cells"] = stats.certified
    rep.details["min_certified_lower_bound"] = mpmath.nstr(stats.min_lower, 6)
    if stats.inconclusive:
        rep.details["inconclusive_cells"] = [(mpmath.nstr(u, 12), mpmath.nstr(v, 12)) for u, v in stats.inconclusive[:20]]
        # the failed witness above already marks FAIL if cells were negative; depth-cap only is inconclusive
        if not stats.negative:
            rep.status = "inconclusive"
    if stats.negative:
        rep.details["negative_cells"] = [(mpmath.nstr(u, 12), mpmath.nstr(v, 12)) for u, v in stats.negative[:20]]

    # (c) zero and critical point at phi_k
    with mpmath.workprec(ZERO_BITS):
        ph = mid(constants.phi(k, ZERO_BITS))
        al = ph ** (k - 1)
        fk = lambda u: al * h(u**k) - u ** (k - 1) * h(u)
        val = fk(ph)
        dval = mpmath.diff(fk, ph)
    rep.add(f"|f_{k}(phi_{k})|", mpmath.nstr(abs(val), 5), f"< {ZERO_TOL}", abs(val) < ZERO_TOL, ZERO_BITS)
    rep.add(f"|f_{k}'(phi_{k})| (central difference)", mpmath.nstr(abs(dval), 5), f"< {ZERO_TOL}",
            abs(dval) < ZERO_TOL, ZERO_BITS)
    rep.add(f"f_{k}(0), f_{k}(1)", f"{f_k(k, 0)}, {f_k(k, 1)}", "== 0 exactly", f_k(k, 0) == 0 and f_k(k, 1) == 0)
    return rep


# ---------------------------------------------------------------------------
# sampled inequalities
# ---------------------------------------------------------------------------

FLOAT_REL_TOL = 1e-12
MP_ABS_TOL = mpmath.mpf(2) ** -100


def _recheck(candidates, exact_slack):
    """High-precision re-evaluation of float-layer suspects; returns true violations."""
    bad = []
    with mpmath.workprec(RECHECK_BITS):
        for pt in candidates:
            s = exact_slack(pt)
            if s < -MP_ABS_TOL:
                bad.append((pt, s))
    return bad


def _batches(total, size=200_000):
    while total > 0:
        yield min(size, total)
        total -= size


def verify_lemma_cl(samples: int = 1_000_000, seed: int = 0) -> PaperCheckReport:
    """h(xy) >= (x h(y) + y h(x)) / (2 phi_2) on [0, 1]^2."""
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    rep = PaperCheckReport("lemma-4.1", "Lemma 4.1: h(xy) >= (x h(y) + y h(x))/(2 phi)", seed=seed,
                           precision_bits=RECHECK_BITS)
    ph = float(mid(constants.phi(2)))
    c = 1 / (2 * ph)
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    def adversarial(n):
        parts = [rng.random((n, 2))]
        # near the equality point, across scales
        scale = 10.0 ** rng.uniform(-9, -1, size=(n, 1))
        parts.append(np.clip(ph + scale * rng.standard_normal((n, 2)), 0, 1))
        # edges and corners
        e = rng.random((n, 2))
        e[np.arange(n), rng.integers(0, 2, n)] = rng.integers(0, 2, n)
        parts.append(e)
        t = rng.random(n)
        parts.append(np.stack([t, t], axis=1))
        return np.concatenate(parts)

    n_checked, suspects = 0, []
    min_slack, min_pt = math.inf, None
    for size in _batches(samples):
        pts = rng.random((size, 2)) if n_checked else np.concatenate([adversarial(size // 4), rng.random((size - 4 * (size // 4), 2))])
        x, y = pts[:, 0], pts[:, 1]
        lhs = h_np(x * y)
        rhs = c * (x * h_np(y) + y * h_np(x))
        slack = lhs - rhs
        tol = FLOAT_REL_TOL * (np.abs(lhs) + np.abs(rhs))
        suspects.extend(map(tuple, pts[slack < tol]))
        j = int(np.argmin(slack))
        if slack[j] < min_slack:
            min_slack, min_pt = float(slack[j]), (float(x[j]), float(y[j]))
        n_checked += size

    def exact(pt):
        xm, ym = mpmath.mpf(pt[0]), mpmath.mpf(pt[1])
        cm = 1 / (2 * mid(constants.phi(2, RECHECK_BITS)))
        return h(xm * ym) - cm * (xm * h(ym) + ym * h(xm))

    bad = _recheck(suspects, exact)
    rep.add(f"violations over {n_checked} samples", len(bad), "== 0", not bad, RECHECK_BITS)
    rep.add("h(1*1) vs rhs at (1,1)", str(exact((1.0, 1.0))), ">= 0", exact((1.0, 1.0)) >= 0)
    with mpmath.workprec(RECHECK_BITS):
        p2 = mid(constants.phi(2, RECHECK_BITS))
        tight = h(p2 * p2) - (1 / (2 * p2)) * (2 * p2 * h(p2))
    rep.add("slack at (phi, phi)", mpmath.nstr(tight, 5), "|.| < 1e-30 (equality)", abs(tight) < 1e-30, RECHECK_BITS)
    rep.details.update(samples=n_checked, float_suspects=len(suspects), min_float_slack=repr(min_slack),
                       min_float_slack_at=[repr(v) for v in min_pt] if min_pt else None,
                       violations=[[repr(p[0]), repr(p[1]), mpmath.nstr(s, 5)] for p, s in bad[:10]])
    return rep


def _others_product(x):
    """prod_{j != i} x_j for each i, without division."""
    n = x.shape[-1]
    ones = np.ones(x.shape[:-1] + (1,))
    left = np.concatenate([ones, np.cumprod(x[..., :-1], axis=-1)], axis=-1)
    right = np.concatenate([np.cumprod(x[..., ::-1][..., :-1], axis=-1)[..., ::-1], ones], axis=-1)
    return left * right if n > 1 else ones


def verify_corollary_main(k: int, samples: int = 100_000, seed: int = 0) -> PaperCheckReport:
    """h(prod x) >= (mu_k/k) sum_i h(x_i) prod_{j != i} x_j on [0, 1]^k."""
    _check_k(k)
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    rep = PaperCheckReport(f"corollary-4.6-k{k}", "Corollary 4.6: h(prod x_i) >= (mu_k/k) sum h(x_i) prod_{j!=i} x_j",
                           seed=seed, precision_bits=RECHECK_BITS)
    muk = float(mid(constants.mu(k)))
    rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
    q = samples // 5
    t = rng.random(q)
    diag = np.repeat(t[:, None], k, axis=1)
    # supported on {t, 1}
    sup = np.where(rng.random((q, k)) < 0.5, 1.0, t[:, None])
    bnd = rng.random((q, k))
    mask = rng.random((q, k)) < 0.3
    bnd[mask] = rng.integers(0, 2, mask.sum())
    ph = float(mid(constants.phi(k)))
    near = np.clip(ph + 10.0 ** rng.uniform(-8, -1, (q, 1)) * rng.standard_normal((q, k)), 0, 1)
    pts = np.concatenate([rng.random((samples - 4 * q, k)), diag, sup, bnd, near])

    lhs = h_np(np.prod(pts, axis=1))
    rhs = muk / k * (h_np(pts) * _others_product(pts)).sum(axis=1)
    slack = lhs - rhs
    tol = FLOAT_REL_TOL * (np.abs(lhs) + np.abs(rhs))
    suspects = list(map(tuple, pts[slack < tol]))

    def exact(pt):
        xs = [mpmath.mpf(v) for v in pt]
        m = mid(constants.mu(k, RECHECK_BITS))
        total = mpmath.fsum(h(xs[i]) * mpmath.fprod(xs[:i] + xs[i + 1:]) for i in range(k))
        return h(mpmath.fprod(xs)) - m / k * total

    bad = _recheck(suspects, exact)
    rep.add(f"violations over {len(pts)} samples", len(bad), "== 0", not bad, RECHECK_BITS)
    zero_pt = (0.0,) + (0.5,) * (k - 1)
    rep.add("point with a zero coordinate", mpmath.nstr(exact(zero_pt), 5), "== 0", exact(zero_pt) == 0)
    j = int(np.argmin(slack))
    rep.details.update(samples=len(pts), float_suspects=len(suspects), min_float_slack=repr(float(slack[j])),
                       min_float_slack_at=[repr(float(v)) for v in pts[j]], mu_k=repr(muk),
                       violations=[[*map(repr, p), mpmath.nstr(s, 5)] for p, s in bad[:10]])
    return rep


# ---------------------------------------------------------------------------
# minimising M_k
# ---------------------------------------------------------------------------


@dataclass
class MinimizeResult:
    k: int
    point: tuple
    value: float
    diagonal_t: float
    diagonal_value: float
    bound: float
    report: PaperCheckReport


def _diag_min(k, scan=20_000):
    t = np.linspace(0, 1, scan + 2)[1:-1]
    vals = h_np(t**k) / (t ** (k - 1) * h_np(t)) / k
    i = int(np.argmin(vals))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, scan - 1)]
    res = optimize.minimize_scalar(lambda u: float(h_np(u**k) / (u ** (k - 1) * h_np(u)) / k),
                                   bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


def minimize_m_k(k: int, tolerance: float = 1e-6, starts: int = 24, seed: int = 0) -> MinimizeResult:
    """Multistart L-BFGS-B on M_k plus a dense scan of the diagonal F_k(t)/k."""
    _check_k(k)
    rep = PaperCheckReport(f"lemma-4.5-k{k}", "Lemma 4.5: minima of M_k are diagonal, mu_k/k <= M_k",
                           seed=seed)
    bound = float(mid(constants.mu(k))) / k
    rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
    eps = 1e-9
    fun = lambda v: float(m_k_np(v))
    best = None
    for _ in range(starts):
        x0 = rng.uniform(0.05, 0.95, k)
        res = optimize.minimize(fun, x0, method="L-BFGS-B", bounds=[(eps, 1 - eps)] * k,
                                options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 5000})
        if best is None or res.fun < best.fun:
            best = res
    # polish from the best start with a derivative-free method that does not stop on flat gradients
    pol = optimize.minimize(fun, best.x, method="Nelder-Mead",
                            options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 2000 * k})
    if pol.fun <= best.fun and np.all((pol.x > 0) & (pol.x < 1)):
        best = pol
    point = tuple(float(v) for v in best.x)
    value = float(best.fun)

    dt, dval = _diag_min(k)
    # diagonal points that also contain ones: M_k = F_{k-m}(t)/(k-m)
    sub = [(_diag_min(j)[1], j) for j in range(2, k)]
    diag_best = min([(dval, k)] + sub)

    non_one = [c for c in point if c < 1 - 1e-6]
    spread = max(non_one) - min(non_one) if non_one else 0.0
    rep.add(f"min M_{k} (multistart)", repr(value), f">= mu_k/k - {tolerance} = {bound - tolerance!r}",
            value >= bound - tolerance)
    rep.add(f"coordinate spread of minimiser (non-1 entries)", repr(spread), f"<= {tolerance}",
            spread <= tolerance)
    rep.add(f"min F_{k}(t)/k on the diagonal", repr(dval), f">= mu_k/k - {tolerance}", dval >= bound - tolerance)
    rep.add("multistart vs diagonal minimum", repr(value - diag_best[0]), f"|.| <= {tolerance}",
            abs(value - diag_best[0]) <= tolerance)
    rep.details.update(point=[repr(c) for c in point], diagonal_t=repr(dt), bound=repr(bound),
                       diagonal_best_dimension=diag_best[1])
    return MinimizeResult(k, point, value, dt, dval, bound, rep)


# ---------------------------------------------------------------------------
# small-instance entropy oracle
# ---------------------------------------------------------------------------


@dataclass
class JointDistribution:
    """Law of (A_1, ..., A_k), each A_j an n-bit mask, with exact probabilities."""

    n: int
    k: int
    probs: dict
    product_form: bool = False

    def __post_init__(self):
        if sum(self.probs.values()) != 1:
            raise ParameterError("probabilities must sum to exactly 1")
        size = 1 << self.n
        for key, p in self.probs.items():
            if p < 0:
                raise ParameterError("negative probability")
            if len(key) != self.k or any(not 0 <= v < size for v in key):
                raise ParameterError(f"bad outcome {key}")
        if self.product_form and not self.factorizes():
            raise ParameterError("product_form set on a joint law that does not factorize")

    @classmethod
    def from_marginals(cls, n: int, marginals: Sequence[Sequence[Fraction]]) -> "JointDistribution":
        probs = {}
        for combo in itertools.product(*[[(v, p) for v, p in enumerate(m) if p] for m in marginals]):
            p = Fraction(1)
            for _, q in combo:
                p *= q
            probs[tuple(v for v, _ in combo)] = p
        return cls(n, len(marginals), probs, product_form=True)

    def marginal(self, j: int) -> list:
        out = [Fraction(0)] * (1 << self.n)
        for key, p in self.probs.items():
            out[key[j]] += p
        return out

    def factorizes(self) -> bool:
        margs = [self.marginal(j) for j in range(self.k)]
        for key in itertools.product(*[[v for v, p in enumerate(m) if p] for m in margs]):
            p = Fraction(1)
            for j, v in enumerate(key):
                p *= margs[j][v]
            if self.probs.get(key, 0) != p:
                return False
        return True

    def union_law(self) -> list:
        out = [Fraction(0)] * (1 << self.n)
        for key, p in self.probs.items():
            u = 0
            for v in key:
                u |= v
            out[u] += p
        return out

    def zero_prob(self, j: int, i: int) -> Fraction:
        """Pr[bit i of A_j is 0]."""
        return sum((p for v, p in enumerate(self.marginal(j)) if not (v >> i) & 1), Fraction(0))


def entropy(law) -> mpmath.mpf:
    """Shannon entropy (nats) of a finite law with exact probabilities."""
    total = mpmath.mpf(0)
    for p in law:
        if p:
            q = _mpf(p)
            total -= q * mpmath.log(q)
    return total


def _random_marginal(rng, n):
    size = 1 << n
    shape = rng.integers(0, 4)
    if shape == 0:  # point mass
        w = np.zeros(size, dtype=np.int64)
        w[rng.integers(0, size)] = 1
    elif shape == 1:  # sparse support
        w = rng.integers(0, 12, size) * (rng.random(size) < 0.4)
    elif shape == 2:  # mass concentrated on small sets
        pop = np.array([bin(v).count("1") for v in range(size)])
        w = np.round(rng.integers(1, 50, size) * rng.uniform(0.01, 0.6) ** pop * 1000).astype(np.int64)
    else:
        w = rng.integers(0, 20, size)
    if w.sum() == 0:
        w[0] = 1
    total = int(w.sum())
    return [Fraction(int(v), total) for v in w]


LEMMA_TOL = mpmath.mpf(10) ** -25


def verify_lemma_main_small(n: int = 3, k: int = 3, trials: int = 10_000, seed: int = 0) -> PaperCheckReport:
    """H(A_1 | ... | A_k) >= p^(k-1) mu_k / k * sum_j H(A_j) for independent A_j on {0,1}^n."""
    if not (1 <= n <= 4 and 2 <= k <= 3):
        raise ParameterError("exhaustive oracle supports 1 <= n <= 4 and 2 <= k <= 3")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    rep = PaperCheckReport(f"lemma-5.2-n{n}-k{k}", "Lemma 5.2: H(union) >= p^(k-1) mu_k/k sum H(A_j)",
                           seed=seed, precision_bits=DEFAULT_BITS)
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, k]))
    bad, nontrivial = [], 0
    tightest = (mpmath.inf, None)
    with mpmath.workprec(DEFAULT_BITS):
        muk = mid(constants.mu(k, DEFAULT_BITS))
        for trial in range(trials):
            margs = [_random_marginal(rng, n) for _ in range(k)]
            joint = JointDistribution.from_marginals(n, margs)
            p = min(joint.zero_prob(j, i) for j in range(k) for i in range(n))
            lhs = entropy(joint.union_law())
            rhs = _mpf(p) ** (k - 1) * muk / k * mpmath.fsum(entropy(m) for m in margs)
            if rhs > 0:
                nontrivial += 1
                ratio = lhs / rhs
                if ratio < tightest[0]:
                    tightest = (ratio, trial)
            if lhs - rhs < -LEMMA_TOL:
                bad.append((trial, lhs - rhs))
    rep.add(f"violations over {trials} independent instances", len(bad), "== 0", not bad, DEFAULT_BITS)
    rep.details.update(trials=trials, nontrivial=nontrivial,
                       min_ratio=mpmath.nstr(tightest[0], 8) if nontrivial else None,
                       min_ratio_trial=tightest[1],
                       violations=[[t, mpmath.nstr(s, 5)] for t, s in bad[:10]])
    return rep
