"""Density, structural classifiers, and the property suite for pairs A ≤fe B.

Everything reported for the decidable tier is exact.  Generator-tier sets get
horizon samples: densities as lower bounds of window maxima, and run/gap
statistics as evidence attached to Unknown verdicts.
"""
from __future__ import annotations

import csv
import io
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bits as B
from . import natset as ns
from .embed import fe_decide
from .errors import TierError
from .natset import Finite, NatSet, Verdict, Window


# ---------------------------------------------------------------------------
# density


@dataclass(frozen=True)
class DensityReport:
    natural_density: Optional[Fraction]
    density_samples: tuple  # ((n, |S ∩ n| / n), ...)
    banach_upper: Optional[Fraction]
    banach_samples: tuple  # ((window length, max fraction over placements), ...)
    horizon: int

    def to_dict(self):
        frac = lambda q: None if q is None else str(q)  # noqa: E731
        return {
            "natural_density": frac(self.natural_density),
            "banach_upper": frac(self.banach_upper),
            "density_samples": [{"n": n, "value": str(q)} for n, q in self.density_samples],
            "banach_samples": [{"length": n, "value": str(q)} for n, q in self.banach_samples],
            "horizon": self.horizon,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count", "ratio", "numerator", "denominator"])
        for n, q in self.density_samples:
            w.writerow([n, q * n, float(q), q.numerator, q.denominator])
        return buf.getvalue()


def _prefix_counts(s: NatSet, horizon: int) -> np.ndarray:
    """counts[n] = |S ∩ [0, n)| for 0 <= n <= horizon."""
    arr = B.to_array(s.window_bits(0, horizon), horizon)
    return np.concatenate(([0], np.cumsum(arr, dtype=np.int64)))


def tail_density(s: NatSet) -> Fraction:
    """Ones in the period over the period: both the natural and the upper
    Banach density of a decidable set."""
    e = ns.as_periodic(s)
    return Fraction(e.ones_in_period, e.period)


def peak_points(m_max: int, m_min: int = 2) -> list[int]:
    """n = 2^m + m, where |Q ∩ n| / n has its local maxima."""
    return [(1 << m) + m for m in range(m_min, m_max + 1)]


def density_report(s: NatSet, horizon: int, window_lengths: Sequence[int] = (),
                   sample_points: Optional[Iterable[int]] = None) -> DensityReport:
    if window_lengths and max(window_lengths) > horizon:
        raise ValueError("horizon must cover the longest window")
    if sample_points is None:
        sample_points = [1 << j for j in range(horizon.bit_length()) if (1 << j) <= horizon]
    points = sorted(set(sample_points))
    if points and (points[0] < 1 or points[-1] > horizon):
        raise ValueError("sample points must lie in [1, horizon]")
    counts = _prefix_counts(s, horizon)
    samples = tuple((n, Fraction(int(counts[n]), n)) for n in points)
    banach = []
    for length in window_lengths:
        best = int((counts[length:] - counts[:-length]).max()) if length else 0
        banach.append((length, Fraction(best, length) if length else Fraction(0)))
    exact = tail_density(s) if s.decidable else None
    return DensityReport(exact, samples, exact, tuple(banach), horizon)


# ---------------------------------------------------------------------------
# runs, gaps, and the thick / syndetic classifiers


def _exact_span(s: NatSet) -> int:
    e = ns.as_periodic(s)
    return e.threshold + 2 * e.period + 1


def max_run(s: NatSet, horizon: Optional[int] = None) -> int:
    """Longest interval inside S (below ``horizon``; exact when omitted for a
    decidable, non-cofinite set)."""
    if horizon is None:
        horizon = _exact_span(s)
    if isinstance(s, ns.Generator):
        best = run = 0
        prev = None
        for x in s.elements(horizon):
            run = run + 1 if prev is not None and x == prev + 1 else 1
            best = max(best, run)
            prev = x
        return best
    return B.max_run(B.to_array(s.window_bits(0, horizon), horizon))


def max_gap(s: NatSet, horizon: Optional[int] = None) -> int:
    """Largest difference between consecutive elements below ``horizon``."""
    if horizon is None:
        horizon = _exact_span(s)
    xs = np.fromiter(s.elements(horizon), dtype=np.int64)
    return int(np.diff(xs).max()) if xs.size > 1 else 0


def _gap_bounded_stretch(s: NatSet, gap_bound: int, horizon: int) -> int:
    """Length of the longest stretch below the horizon whose consecutive gaps are <= gap_bound."""
    best, start, prev = 0, None, None
    for x in s.elements(horizon):
        if prev is None or x - prev > gap_bound:
            start = x
        prev = x
        best = max(best, x - start + 1)
    return best


def is_thick(s: NatSet, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Contains arbitrarily long intervals.  For eventually periodic sets this
    means cofinite; for generators no finite horizon settles it."""
    if s.decidable:
        e = ns.as_periodic(s)
        if e.period == 1 and e.mask == 1:
            return Verdict.true({"cofinite_from": e.threshold})
        return Verdict.false({"max_run": max_run(s)})
    return Verdict.unknown(horizon, {"max_run_seen": max_run(s, horizon)})


def is_syndetic(s: NatSet, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    if s.decidable:
        e = ns.as_periodic(s)
        if e.mask:
            return Verdict.true({"gap_bound": max(max_gap(s), ns.first_element(s) + 1)})
        return Verdict.false(note="finite set")
    return Verdict.unknown(horizon, {"max_gap_seen": max_gap(s, horizon)})


def is_piecewise_syndetic(s: NatSet, gap_bound: Optional[int] = None,
                          horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Decidable tier: the same as syndetic (the tail pattern bounds every gap).
    Generator tier: Unknown, with the longest gap-bounded stretch seen."""
    if s.decidable:
        return is_syndetic(s)
    evidence = {"max_gap_seen": max_gap(s, horizon)}
    if gap_bound is not None:
        evidence["gap_bound"] = gap_bound
        evidence["longest_stretch"] = _gap_bounded_stretch(s, gap_bound, horizon)
    return Verdict.unknown(horizon, evidence)


@dataclass(frozen=True)
class StructureReport:
    thick: Verdict
    syndetic: Verdict
    piecewise_syndetic: Verdict
    max_run_seen: int
    max_gap_seen: int
    horizon: int

    def to_dict(self):
        return {"thick": self.thick.to_dict(), "syndetic": self.syndetic.to_dict(),
                "piecewise_syndetic": self.piecewise_syndetic.to_dict(),
                "max_run_seen": self.max_run_seen, "max_gap_seen": self.max_gap_seen,
                "horizon": self.horizon}


def classify(s: NatSet, horizon: int = ns.DEFAULT_HORIZON, gap_bound: Optional[int] = None) -> StructureReport:
    return StructureReport(
        is_thick(s, horizon), is_syndetic(s, horizon), is_piecewise_syndetic(s, gap_bound, horizon),
        max_run(s, horizon), max_gap(s, horizon), horizon,
    )


# ---------------------------------------------------------------------------
# arithmetic progressions and differences


def find_ap(s: NatSet, k: int, horizon: int) -> Optional[tuple[int, int]]:
    """A k-term progression a, a+d, ..., a+(k-1)d in S below ``horizon``.

    Smallest step d first, then smallest start a.  Each d costs k shifted
    ANDs of the horizon window.
    """
    if k < 1 or horizon <= 0:
        raise ValueError("need k >= 1 and horizon > 0")
    w = s.window_bits(0, horizon)
    if not w:
        return None
    if k == 1:
        return B.lowest(w), 1
    for d in range(1, (horizon - 1) // (k - 1) + 1):
        room = horizon - (k - 1) * d
        acc = w & B.ones(room)
        for i in range(1, k):
            acc &= w >> (i * d)
            if not acc:
                break
        if acc:
            return B.lowest(acc), d
    return None


def has_ap(s: NatSet, k: int, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Exact on the decidable tier: a nonempty periodic tail holds a, a+p, ...,
    so searching below t + k*p is enough."""
    if s.decidable:
        e = ns.as_periodic(s)
        hit = find_ap(s, k, e.threshold + k * e.period + 1)
        return Verdict.true(hit) if hit else Verdict.false()
    hit = find_ap(s, k, horizon)
    return Verdict.true(hit) if hit else Verdict.unknown(horizon)


def diff_member(s: NatSet, d: int, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Is d in D(S) = {d >= 0 : x and x + d both in S for some x}?"""
    if s.decidable:
        x = ns.first_element(ns.intersect(s, ns.shift_left(s, d)))
        return Verdict.true(x) if x is not None else Verdict.false()
    for x in s.elements(horizon):
        if s.contains(x + d):
            return Verdict.true(x)
    return Verdict.unknown(horizon)


def difference_window(s: NatSet, horizon: int) -> Window:
    """D(S) ∩ [0, horizon).  Exact for decidable S, whose witnesses can be
    taken below t + p; for generators only pairs with x < horizon are used."""
    if s.decidable:
        e = ns.as_periodic(s)
        reach = e.threshold + e.period
    else:
        reach = horizon
    w = s.window_bits(0, reach + horizon)
    acc = 0
    for x in s.elements(reach):
        acc |= w >> x
    return Window(0, horizon, acc & B.ones(horizon))


def difference_set(a: NatSet, b: NatSet) -> NatSet:
    """{a - b >= 0 : a ∈ A, b ∈ B} for decidable A and B.

    Equals the union of A - b over b ∈ B; those shifts repeat once b passes
    A's threshold, so finitely many representatives suffice.
    """
    if not (a.decidable and b.decidable):
        raise TierError("difference_set needs decidable sets")
    ea, eb = ns.as_periodic(a), ns.as_periodic(b)
    reach = max(ea.threshold, eb.threshold) + ea.period * eb.period
    out: NatSet = ns.empty()
    for y in b.elements(reach):
        out = ns.union(out, ns.shift_left(a, y))
    return out


def shifted_intersection(s: NatSet, g: NatSet) -> NatSet:
    """The intersection of S - t over t in G (all of N for empty G)."""
    if not isinstance(g, Finite):
        raise TierError("G must be finite")
    out: NatSet = ns.naturals()
    for t in g.items:
        out = ns.intersect(out, ns.shift_left(s, t))
    return out


# ---------------------------------------------------------------------------
# property suite


@dataclass(frozen=True)
class SuiteConfig:
    k_max: int = 5
    d_max: int = 256
    g_max: int = 6
    g_size: int = 3


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"check": self.name, "status": "pass" if self.passed else "violation",
                "detail": ns._jsonable(self.detail)}


@dataclass(frozen=True)
class SuiteReport:
    """Checks of the properties transferred from A to B by A ≤fe B."""

    a: str
    b: str
    embeds: bool
    checks: tuple
    seed: Optional[object] = None

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"a": self.a, "b": self.b, "embeds": self.embeds, "seed": self.seed,
                "vacuous": not self.embeds,
                "checks": sorted((c.to_dict() for c in self.checks), key=lambda d: d["check"]),
                "violations": len(self.violations)}


def property_suite(a: NatSet, b: NatSet, config: SuiteConfig = SuiteConfig(), seed=None) -> SuiteReport:
    """Run checks (2)-(6) on a decidable pair; vacuous unless A ≤fe B."""
    verdict = fe_decide(a, b)
    if not verdict.embeds:
        return SuiteReport(ns.describe(a), ns.describe(b), False, (), seed)
    checks = []

    pa, pb = is_piecewise_syndetic(a), is_piecewise_syndetic(b)
    checks.append(CheckResult("piecewise_syndetic", not pa.is_true or pb.is_true,
                              {"a": pa.truth.value, "b": pb.truth.value}))

    aps = {}
    ok = True
    for k in range(1, config.k_max + 1):
        in_a, in_b = has_ap(a, k), has_ap(b, k)
        aps[k] = {"a": in_a.witness, "b": in_b.witness}
        if in_a.is_true and not in_b.is_true:
            ok = False
    checks.append(CheckResult("arithmetic_progressions", ok, aps))

    bd_a, bd_b = tail_density(a), tail_density(b)
    checks.append(CheckResult("banach_density", bd_a <= bd_b, {"a": str(bd_a), "b": str(bd_b)}))

    da, db = difference_window(a, config.d_max), difference_window(b, config.d_max)
    missing = B.positions(da.bits & ~db.bits)
    checks.append(CheckResult("differences", not missing, {"missing": missing}))

    failures = []
    for size in range(config.g_size + 1):
        for g in itertools.combinations(range(config.g_max), size):
            gs = Finite(g)
            if not fe_decide(shifted_intersection(a, gs), shifted_intersection(b, gs)).embeds:
                failures.append(list(g))
    checks.append(CheckResult("shifted_intersections", not failures, {"failing_G": failures}))
    return SuiteReport(ns.describe(a), ns.describe(b), True, tuple(checks), seed)


@dataclass(frozen=True)
class BatchReport:
    seed: int
    count: int
    reports: tuple

    @property
    def violations(self) -> list:
        return [(i, c) for i, r in enumerate(self.reports) for c in r.violations]

    def to_dict(self, dump: bool = False):
        out = {"seed": self.seed, "count": self.count,
               "violations": [{"case": i, **c.to_dict()} for i, c in self.violations]}
        if dump:
            out["cases"] = [r.to_dict() for r in self.reports]
        return out


def _suite_case(args) -> SuiteReport:
    from .generate import random_embeds_pair

    seed, index, max_t, max_p, config = args
    rng = random.Random(f"{seed}:{index}")
    a, b = random_embeds_pair(rng, max_t, max_p)
    return property_suite(a, b, config, seed=f"{seed}:{index}")


def run_suite(count: int, seed: int, max_t: int = 16, max_p: int = 12,
              config: SuiteConfig = SuiteConfig(), workers: int = 1) -> BatchReport:
    """Property suite on ``count`` seeded random Embeds pairs; results are
    ordered by case index whatever the worker count."""
    jobs = [(seed, i, max_t, max_p, config) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_suite_case, jobs, chunksize=16))
    else:
        reports = [_suite_case(j) for j in jobs]
    return BatchReport(seed, count, tuple(reports))
