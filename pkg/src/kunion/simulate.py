"""Monte Carlo and exhaustive checks of the two-layer extremal family.

The family on [n] is F = F1 | F2 with F1 = {x : |x| = t1} and
F2 = {x : |x| >= t2}, t1 = floor(psi_k n + n^(2/3)), t2 = floor((1 - psi_k) n).
Sampling is uniform over F.  Sets are Python-int bitmasks; the bulk
estimators use the fact that, by symmetry, only set sizes matter: adding a
uniform s-subset to a set of size u brings in Hypergeometric(n-u, u, s) new
elements.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from . import constants
from .numerics import ParameterError
from .reports import SCHEMA_VERSION

__all__ = [
    "FamilySpec",
    "SimReport",
    "family_weights",
    "size_law",
    "sample_member",
    "is_member",
    "estimate_closure_fraction",
    "estimate_element_frequency",
    "exact_closure_fraction",
    "exact_closure_by_sizes",
    "exact_element_frequency",
    "enumerate_family",
    "uniformity_chi2",
    "stratum_frequencies",
    "simulate",
    "check_construction",
    "check_exhaustive",
]

Z99 = 2.5758293035489004  # two-sided 99% normal quantile
BATCH = 10_000
EXACT_LIMIT = 10_000


def _psi_rational(k: int) -> Fraction:
    """psi_k as the midpoint of a certified enclosure of width < 1e-9."""
    enc = constants.psi(k, 40)
    return (constants.to_fraction(constants.lower(enc)) + constants.to_fraction(constants.upper(enc))) / 2


def _floor_plus_cuberoot_sq(a: Fraction, n: int) -> int:
    """floor(a + n^(2/3)) exactly."""
    m = math.floor(a + round(n ** (2 / 3)))
    # adjust: m is the largest integer with m - a <= n^(2/3), i.e. (m - a)^3 <= n^2 when m >= a
    while (m + 1 - a) < 0 or (m + 1 - a) ** 3 <= n * n:
        m += 1
    while m - a > 0 and (m - a) ** 3 > n * n:
        m -= 1
    return m


@dataclass(frozen=True)
class FamilySpec:
    n: int
    k: int
    t1: int
    t2: int
    degenerate: bool = False

    @classmethod
    def build(cls, n: int, k: int) -> "FamilySpec":
        if not isinstance(k, int) or k < 2:
            raise ParameterError("k must be an integer >= 2")
        if not isinstance(n, int) or n < 2:
            raise ParameterError("n must be an integer >= 2")
        psi = _psi_rational(k)
        t1 = _floor_plus_cuberoot_sq(psi * n, n)
        t2 = math.floor((1 - psi) * n)
        t1 = min(t1, n)
        return cls(n, k, t1, t2, degenerate=not (0 < t1 < t2 <= n))

    def __post_init__(self):
        if not (0 <= self.t1 <= self.n and 0 <= self.t2 <= self.n):
            raise ParameterError("thresholds must lie in [0, n]")
        if self.degenerate != (not (0 < self.t1 < self.t2 <= self.n)):
            raise ParameterError("degenerate flag inconsistent with thresholds")

    @property
    def f1_separate(self) -> bool:
        """F1 is a stratum of its own (t1 < t2); otherwise it lies inside F2."""
        return self.t1 < self.t2

    def contains_size(self, size) -> np.ndarray | bool:
        return (size == self.t1) | (size >= self.t2)


def family_weights(spec: FamilySpec):
    """(|F1|/|F|, |F2|/|F|) with F1 counted only outside F2.

    Exact Fractions for n <= 10^4; floats from log-space sums above.
    """
    n = spec.n
    if n <= EXACT_LIMIT:
        a = math.comb(n, spec.t1) if spec.f1_separate else 0
        b = sum(math.comb(n, j) for j in range(spec.t2, n + 1))
        return Fraction(a, a + b), Fraction(b, a + b)
    lg = lambda j: math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1)
    la = lg(spec.t1) if spec.f1_separate else -math.inf
    tail = np.array([lg(j) for j in range(spec.t2, n + 1)])
    lb = float(np.logaddexp.reduce(tail)) if tail.size else -math.inf
    top = max(la, lb)
    wa, wb = math.exp(la - top), math.exp(lb - top)
    return wa / (wa + wb), wb / (wa + wb)


def size_law(spec: FamilySpec):
    """(sizes, probabilities) of |A| for A uniform over F, as float arrays."""
    n = spec.n
    sizes = list(range(spec.t2, n + 1))
    if spec.f1_separate:
        sizes = [spec.t1] + sizes
    sizes = np.array(sizes, dtype=np.int64)
    if n <= EXACT_LIMIT:
        counts = [math.comb(n, int(j)) for j in sizes]
        total = sum(counts)
        probs = np.array([c / total for c in counts])  # int/int division is correctly rounded
    else:
        lw = np.array([math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1) for j in sizes])
        probs = np.exp(lw - np.logaddexp.reduce(lw))
    return sizes, probs / probs.sum()


def _exact_size_law(spec: FamilySpec):
    sizes = ([spec.t1] if spec.f1_separate else []) + list(range(spec.t2, spec.n + 1))
    counts = [math.comb(spec.n, j) for j in sizes]
    total = sum(counts)
    return sizes, [Fraction(c, total) for c in counts]


def is_member(spec: FamilySpec, mask: int) -> bool:
    s = mask.bit_count() if hasattr(mask, "bit_count") else bin(mask).count("1")
    return bool(spec.contains_size(s))


def sample_member(spec: FamilySpec, rng: np.random.Generator) -> int:
    """Uniform member of F as a bitmask over [n]: stratum, then size, then subset."""
    sizes, probs = _cached_size_law(spec)
    s = int(sizes[np.searchsorted(np.cumsum(probs), rng.random(), side="right").clip(0, len(sizes) - 1)])
    chosen = rng.choice(spec.n, size=s, replace=False)
    mask = 0
    for i in chosen:
        mask |= 1 << int(i)
    return mask


_SIZE_LAWS: dict = {}


def _cached_size_law(spec):
    if spec not in _SIZE_LAWS:
        _SIZE_LAWS[spec] = size_law(spec)
    return _SIZE_LAWS[spec]


def stratum_frequencies(spec: FamilySpec, draws: int, seed: int = 0) -> float:
    """Fraction of draws that land in F1 (size t1, outside F2)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    sizes, probs = _cached_size_law(spec)
    picks = sizes[np.searchsorted(np.cumsum(probs), rng.random(draws), side="right").clip(0, len(sizes) - 1)]
    return float(np.mean(picks == spec.t1)) if spec.f1_separate else 0.0


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


@dataclass
class SimReport:
    spec: FamilySpec
    trials: int
    seed: int
    closure_fraction: float | None = None
    closure_half_width: float | None = None
    element_frequency: float | None = None
    frequency_half_width: float | None = None
    f2_weight: Fraction | float | None = None
    exact_frequency: Fraction | float | None = None
    union_size_mean: float | None = None
    union_size_reference: float | None = None
    method: str = "sizes"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(v):
            if v is None:
                return None
            if isinstance(v, Fraction):
                out = {"decimal": repr(float(v))}
                if v.denominator < 10**30:
                    out["exact"] = f"{v.numerator}/{v.denominator}"
                return out
            return repr(float(v))

        d = {"type": "SimReport", "schema_version": SCHEMA_VERSION, "spec": asdict(self.spec),
             "trials": self.trials, "seed": self.seed, "method": self.method}
        for name in ("closure_fraction", "closure_half_width", "element_frequency", "frequency_half_width",
                     "f2_weight", "exact_frequency", "union_size_mean", "union_size_reference"):
            d[name] = num(getattr(self, name))
        d["extra"] = self.extra
        return d


def _proportion_half_width(successes: int, trials: int) -> float:
    """99% Wilson score half-width around the empirical proportion."""
    p = successes / trials
    z2 = Z99 * Z99
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    rad = Z99 * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    return max(abs(centre + rad - p), abs(p - (centre - rad)))


def _batch_rngs(seed: int, trials: int):
    nb = -(-trials // BATCH)
    children = np.random.SeedSequence(seed).spawn(nb)
    for i, ss in enumerate(children):
        yield np.random.default_rng(ss), min(BATCH, trials - i * BATCH)


def _draw_sizes(spec, rng, shape):
    sizes, probs = _cached_size_law(spec)
    idx = np.searchsorted(np.cumsum(probs), rng.random(shape), side="right").clip(0, len(sizes) - 1)
    return sizes[idx]


def _union_sizes(spec, rng, m):
    """Sizes of unions of k independent uniform members, m trials at once."""
    s = _draw_sizes(spec, rng, (m, spec.k))
    u = s[:, 0].copy()
    for j in range(1, spec.k):
        new = rng.hypergeometric(spec.n - u, u, s[:, j]) if spec.n else 0
        u = u + new
    return u


def _union_sizes_bitmask(spec, rng, m):
    out = np.empty(m, dtype=np.int64)
    for t in range(m):
        u = 0
        for _ in range(spec.k):
            u |= sample_member(spec, rng)
        out[t] = bin(u).count("1")
    return out


def _check_trials(trials):
    if not isinstance(trials, int) or trials < 1:
        raise ParameterError("trials must be a positive integer")


def estimate_closure_fraction(spec: FamilySpec, trials: int, seed: int = 0, method: str = "sizes") -> SimReport:
    """Fraction of k-tuples of uniform members whose union lies in F."""
    _check_trials(trials)
    draw = {"sizes": _union_sizes, "bitmask": _union_sizes_bitmask}.get(method)
    if draw is None:
        raise ParameterError(f"unknown method {method!r}")
    hits, total_size = 0, 0
    for rng, m in _batch_rngs(seed, trials):
        u = draw(spec, rng, m)
        hits += int(np.count_nonzero(spec.contains_size(u)))
        total_size += int(u.sum())
    w1, w2 = family_weights(spec)
    psi = float(constants.mid(constants.psi(spec.k, 64)))
    rep = SimReport(spec, trials, seed, method=method)
    rep.closure_fraction = hits / trials
    rep.closure_half_width = _proportion_half_width(hits, trials)
    rep.f2_weight = w2
    rep.union_size_mean = total_size / trials
    rep.union_size_reference = spec.n * (1 - psi)
    return rep


def exact_element_frequency(spec: FamilySpec):
    """(w1 t1 + w2 E[|A| | F2]) / n, exact for n <= 10^4."""
    if spec.n <= EXACT_LIMIT:
        sizes, probs = _exact_size_law(spec)
        return sum((p * s for s, p in zip(sizes, probs)), Fraction(0)) / spec.n
    sizes, probs = size_law(spec)
    return float(np.dot(sizes, probs)) / spec.n


def estimate_element_frequency(spec: FamilySpec, trials: int, seed: int = 0) -> SimReport:
    """Pr[element 0 in a uniform member], estimated as the mean of |A|/n."""
    _check_trials(trials)
    total, total_sq = 0.0, 0.0
    for rng, m in _batch_rngs(seed, trials):
        frac = _draw_sizes(spec, rng, m) / spec.n
        total += float(frac.sum())
        total_sq += float((frac * frac).sum())
    mean = total / trials
    var = max(total_sq / trials - mean * mean, 0.0)
    rep = SimReport(spec, trials, seed)
    rep.element_frequency = mean
    rep.frequency_half_width = Z99 * math.sqrt(var / trials) if trials > 1 else 1.0
    rep.exact_frequency = exact_element_frequency(spec)
    rep.f2_weight = family_weights(spec)[1]
    return rep


# ---------------------------------------------------------------------------
# exhaustive oracles
# ---------------------------------------------------------------------------


def enumerate_family(spec: FamilySpec) -> np.ndarray:
    if spec.n > 20:
        raise ParameterError("enumeration is limited to n <= 20")
    masks = np.arange(1 << spec.n, dtype=np.int64)
    pop = np.zeros_like(masks)
    for i in range(spec.n):
        pop += (masks >> i) & 1
    return masks[spec.contains_size(pop)]


def exact_closure_fraction(spec: FamilySpec) -> Fraction:
    """Closure fraction by brute force over all k-tuples of members (via union counts)."""
    if spec.n > 14:
        raise ParameterError("exhaustive closure is limited to n <= 14")
    members = enumerate_family(spec)
    size = 1 << spec.n
    if len(members) ** spec.k >= 2**62:
        raise ParameterError("too many tuples for exact integer counting")
    counts = np.zeros(size, dtype=np.int64)
    counts[members] = 1
    for _ in range(spec.k - 1):
        nxt = np.zeros(size, dtype=np.int64)
        for x in members.tolist():
            idx = np.arange(size) | x
            np.add.at(nxt, idx, counts)
        counts = nxt
    pop = np.array([bin(v).count("1") for v in range(size)])
    good = int(counts[spec.contains_size(pop)].sum())
    return Fraction(good, len(members) ** spec.k)


def exact_closure_by_sizes(spec: FamilySpec) -> Fraction:
    """Same quantity from a Markov chain on the union size with hypergeometric steps."""
    n = spec.n
    sizes, probs = _exact_size_law(spec)
    dist = {s: p for s, p in zip(sizes, probs)}
    for _ in range(spec.k - 1):
        nxt: dict = {}
        for u, pu in dist.items():
            for s, ps in zip(sizes, probs):
                denom = math.comb(n, s)
                for new in range(max(0, s - u), min(s, n - u) + 1):
                    c = math.comb(n - u, new) * math.comb(u, s - new)
                    if c:
                        nxt[u + new] = nxt.get(u + new, 0) + pu * ps * Fraction(c, denom)
        dist = nxt
    return sum((p for u, p in dist.items() if spec.contains_size(u)), Fraction(0))


def uniformity_chi2(spec: FamilySpec, draws: int, seed: int = 0):
    """(statistic, p-value) of sampled members against the uniform law on F (n <= 14)."""
    if spec.n > 14:
        raise ParameterError("uniformity check is limited to n <= 14")
    members = enumerate_family(spec)
    index = {int(m): i for i, m in enumerate(members)}
    obs = np.zeros(len(members), dtype=np.int64)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    for _ in range(draws):
        obs[index[sample_member(spec, rng)]] += 1
    res = stats.chisquare(obs)
    return float(res.statistic), float(res.pvalue)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

CLOSURE_FLOOR = 0.99
FREQUENCY_TOL = 0.02


def simulate(n: int, k: int, trials: int, seed: int = 0, method: str = "sizes") -> SimReport:
    """Closure fraction and element frequency for one family, in one report."""
    spec = FamilySpec.build(n, k)
    rep = estimate_closure_fraction(spec, trials, seed, method)
    freq = estimate_element_frequency(spec, trials, seed)
    rep.element_frequency = freq.element_frequency
    rep.frequency_half_width = freq.frequency_half_width
    rep.exact_frequency = freq.exact_frequency
    return rep


def check_construction(sim: SimReport):
    """Desk-scale reading of the asymptotic claims: closure >= 0.99, frequency near psi_k."""
    from .reports import PaperCheckReport

    spec = sim.spec
    psi = float(constants.mid(constants.psi(spec.k, 64)))
    rep = PaperCheckReport(f"proposition-2.1-n{spec.n}-k{spec.k}",
                           "Proposition 2.1: 1-o(1) approximately k-union closed, frequency psi_k+o(1)",
                           seed=sim.seed, precision_bits=53)
    rep.add("closure fraction", repr(sim.closure_fraction), f">= {CLOSURE_FLOOR}",
            sim.closure_fraction >= CLOSURE_FLOOR)
    rep.add("element frequency", repr(sim.element_frequency), f"within {FREQUENCY_TOL} of psi_{spec.k} = {psi:.4f}",
            abs(sim.element_frequency - psi) <= FREQUENCY_TOL)
    exact = float(sim.exact_frequency)
    rep.add("exact strata frequency vs Monte Carlo", repr(exact),
            f"within half-width {sim.frequency_half_width!r} (+1e-12)",
            abs(exact - sim.element_frequency) <= sim.frequency_half_width + 1e-12)
    rep.details.update(t1=spec.t1, t2=spec.t2, degenerate=spec.degenerate,
                       excess_t1_over_n=repr(spec.t1 / spec.n - psi))
    return rep


def check_exhaustive(spec: FamilySpec, trials: int, seed: int = 0):
    """Monte Carlo closure fraction against both exact oracles (n <= 14)."""
    from .reports import PaperCheckReport

    exact = exact_closure_fraction(spec)
    chain = exact_closure_by_sizes(spec)
    sim = estimate_closure_fraction(spec, trials, seed)
    rep = PaperCheckReport(f"proposition-2.1-exhaustive-n{spec.n}-k{spec.k}",
                           "Proposition 2.1 construction, exhaustive oracle", seed=seed, precision_bits=53)
    rep.add("enumeration oracle == size-chain oracle", f"{exact} vs {chain}", "==", exact == chain)
    rep.add("Monte Carlo closure fraction", repr(sim.closure_fraction),
            f"within {sim.closure_half_width!r} of {float(exact)!r}",
            abs(sim.closure_fraction - float(exact)) <= sim.closure_half_width)
    rep.details.update(spec=asdict(spec), exact=f"{exact.numerator}/{exact.denominator}", trials=trials)
    return sim, rep
