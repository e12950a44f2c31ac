"""Finite embeddability: A ≤fe B iff every finite F ⊆ A has some F + k ⊆ B.

For an eventually periodic B with threshold t and period p the leftward
shifts B - k cycle once k >= t, so the orbit {B - k} is the finite family
k < t + p.  It is therefore closed, and A ≤fe B exactly when A ⊆ B - k for
one such k.  That is what ``fe_decide`` searches.  Refutations list, for
every k < t + p, an element a of A with a + k outside B.  Because the
remaining shifts repeat those residues, this finite set of a's has no
common translate inside B.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from . import bits as B
from . import natset as ns
from .errors import TierError, WitnessExhausted
from .natset import EventuallyPeriodic, Finite, NatSet, Verdict

DEFAULT_K_CAP = 1 << 20


# ---------------------------------------------------------------------------
# evidence


@dataclass(frozen=True)
class UniformShift:
    """A + k ⊆ B."""

    k: int

    def to_dict(self):
        return {"type": "uniform_shift", "k": self.k}


@dataclass(frozen=True)
class ClosureShift:
    """A ⊆ B - k; the same inclusion read through the orbit of leftward shifts."""

    k: int

    def to_dict(self):
        return {"type": "closure_shift", "k": self.k}


@dataclass(frozen=True)
class PrefixWitnesses:
    """(A ∩ n) + k ⊆ B for each listed (n, k).

    Each pair also covers every smaller prefix, so only the last n for each
    least witness is kept.
    """

    pairs: tuple

    def to_dict(self):
        return {"type": "prefix_witnesses", "pairs": [list(p) for p in self.pairs]}


Certificate = Union[UniformShift, ClosureShift, PrefixWitnesses]


@dataclass(frozen=True)
class ResidueProof:
    """For each k < threshold + period of B: an element of A whose k-translate misses B."""

    threshold: int
    period: int
    transcript: tuple  # ((k, a), ...)

    def to_dict(self):
        return {"type": "residue_proof", "threshold": self.threshold, "period": self.period,
                "transcript": [{"k": k, "element": a} for k, a in self.transcript]}


@dataclass(frozen=True)
class BoundedDomain:
    """B ⊆ [0, bound); every shift k < bound was tried and larger ones overshoot."""

    bound: int

    def to_dict(self):
        return {"type": "bounded_domain", "bound": self.bound}


@dataclass(frozen=True)
class FeRefutation:
    finite_part: Finite
    exhaustiveness: Union[ResidueProof, BoundedDomain]

    def to_dict(self):
        return {"finite_part": list(self.finite_part.items),
                "exhaustiveness": self.exhaustiveness.to_dict()}


EMBEDS, REFUTED, UNKNOWN = "embeds", "refuted", "unknown"


@dataclass(frozen=True)
class FeVerdict:
    status: str
    certificate: Optional[Certificate] = None
    refutation: Optional[FeRefutation] = None
    horizon: Optional[dict] = None

    @property
    def embeds(self) -> bool:
        return self.status == EMBEDS

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def decisive(self) -> bool:
        return self.status != UNKNOWN

    def to_dict(self) -> dict:
        out = {"status": self.status}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.refutation is not None:
            out["refutation"] = self.refutation.to_dict()
        out["horizon"] = self.horizon
        return out


# ---------------------------------------------------------------------------
# translate search


def _require_decidable(*sets: NatSet):
    for s in sets:
        if not s.decidable:
            raise TierError(f"{ns.describe(s)} is generator-tier; use fe_bounded")


def translate_witnesses(f: NatSet, b: NatSet, k_lo: int, k_hi: int) -> list[int]:
    """All k in [k_lo, k_hi) with F + k ⊆ B, ascending.

    B's window is materialized once; each element of F contributes one shift
    and one AND over the whole range of candidate k.
    """
    if not isinstance(f, Finite):
        raise TierError("translate_witnesses needs a finite F")
    if k_hi < k_lo:
        raise ValueError("k_lo must not exceed k_hi")
    width = k_hi - k_lo
    if width == 0:
        return []
    acc = B.ones(width)
    if f.items:
        w = b.window_bits(k_lo, k_hi + f.max)
        for a in f.items:
            acc &= w >> a
            if not acc:
                return []
    return B.positions(acc & B.ones(width), k_lo)


def witness_set(f: NatSet, b: NatSet, horizon: int) -> Finite:
    """{k < horizon : F + k ⊆ B}."""
    return Finite(tuple(translate_witnesses(f, b, 0, horizon)))


def _shift_scan(a: NatSet, b: NatSet, k_hi: int):
    """For each k < k_hi: None if A + k ⊆ B, else the least a ∈ A with a + k ∉ B.

    Both sets must be decidable; the scan length covers one joint period past
    both thresholds, beyond which membership of a and a + k is periodic.
    """
    ta, _, pa, _ = ns._params(a)
    tb, _, pb, _ = ns._params(b)
    n = max(ta, tb) + math.lcm(pa, pb)
    abits = a.window_bits(0, n)
    bwin = b.window_bits(0, n + k_hi)
    full = B.ones(n)
    for k in range(k_hi):
        bad = abits & ~(bwin >> k) & full
        yield k, (B.lowest(bad) if bad else None)


def fe_decide(a: NatSet, b: NatSet) -> FeVerdict:
    """Exact decision for finite / eventually periodic A and B.

    Embeds carries the least closure shift k (A ⊆ B - k); Refuted carries a
    finite F ⊆ A and the per-shift transcript proving no translate fits.
    """
    _require_decidable(a, b)
    nb = ns.as_periodic(b)
    span = nb.threshold + nb.period
    transcript = []
    for k, bad in _shift_scan(a, nb, span):
        if bad is None:
            return FeVerdict(EMBEDS, ClosureShift(k))
        transcript.append((k, bad))
    proof = ResidueProof(nb.threshold, nb.period, tuple(transcript))
    return FeVerdict(REFUTED, refutation=FeRefutation(ns.finite(x for _, x in transcript), proof))


def fe_bounded(a: NatSet, b: NatSet, n_max: int = 64, k_max: int = DEFAULT_K_CAP) -> FeVerdict:
    """Search shifts k < k_max for every prefix A ∩ n, n <= n_max.

    Works on every tier.  A failing prefix becomes a refutation only when the
    shift range is provably exhaustive: B eventually periodic, or B bounded.
    """
    if n_max < 0 or k_max < 1:
        raise ValueError("need n_max >= 0 and k_max >= 1")
    horizon = {"n_max": n_max, "k_max": k_max}
    elems = list(a.elements(n_max))
    w = b.window_bits(0, k_max + n_max)
    acc = B.ones(k_max)
    pairs: list = []
    idx = 0
    for n in range(1, n_max + 1):
        if idx < len(elems) and elems[idx] == n - 1:
            acc &= w >> (n - 1)
            idx += 1
        if not acc:
            return _bounded_failure(a, b, Finite(tuple(elems[:idx])), dict(horizon, failed_prefix=n))
        k = B.lowest(acc)
        if pairs and pairs[-1][1] == k:
            pairs[-1] = (n, k)
        else:
            pairs.append((n, k))
    return FeVerdict(EMBEDS, PrefixWitnesses(tuple(pairs)), horizon=horizon)


def _bounded_failure(a: NatSet, b: NatSet, prefix: Finite, horizon: dict) -> FeVerdict:
    if a.decidable and b.decidable:
        return fe_decide(a, b)
    if isinstance(b, Finite):
        bound = b.max + 1 if b.items else 0
        if not translate_witnesses(prefix, b, 0, bound):
            return FeVerdict(REFUTED, refutation=FeRefutation(prefix, BoundedDomain(bound)))
        return FeVerdict(UNKNOWN, horizon=horizon)
    if b.decidable:
        nb = ns.as_periodic(b)
        transcript = []
        for k in range(nb.threshold + nb.period):
            miss = next((x for x in prefix.items if not nb.contains(x + k)), None)
            if miss is None:
                return FeVerdict(UNKNOWN, horizon=horizon)
            transcript.append((k, miss))
        proof = ResidueProof(nb.threshold, nb.period, tuple(transcript))
        return FeVerdict(REFUTED, refutation=FeRefutation(prefix, proof))
    return FeVerdict(UNKNOWN, horizon=horizon)


def fe(a: NatSet, b: NatSet, n_max: int = 64, k_max: int = DEFAULT_K_CAP) -> FeVerdict:
    """fe_decide when both sets are decidable, fe_bounded otherwise."""
    if a.decidable and b.decidable:
        return fe_decide(a, b)
    return fe_bounded(a, b, n_max, k_max)


# ---------------------------------------------------------------------------
# proper embeddability and whole-set translates


@dataclass(frozen=True)
class ProperFeVerdict:
    """``proper`` holds when every finite F ⊆ A has infinitely many witnesses.

    When proper, ``tail_shift`` is a k >= threshold(B) with A + k ⊆ B; all
    k + j * period(B) then work as well.  When A ≤fe B holds without being
    proper, ``uniform_shift`` is the k with A + k ⊆ B that must then exist.
    """

    proper: bool
    fe: FeVerdict
    tail_shift: Optional[int] = None
    period: Optional[int] = None
    uniform_shift: Optional[int] = None

    def to_dict(self):
        return {"proper": self.proper, "fe": self.fe.to_dict(), "tail_shift": self.tail_shift,
                "period": self.period, "uniform_shift": self.uniform_shift}


def proper_fe(a: NatSet, b: NatSet) -> ProperFeVerdict:
    _require_decidable(a, b)
    verdict = fe_decide(a, b)
    nb = ns.as_periodic(b)
    t, p = nb.threshold, nb.period
    if verdict.embeds:
        for k, bad in _shift_scan(a, nb, t + p):
            if k >= t and bad is None:
                return ProperFeVerdict(True, verdict, tail_shift=k, period=p)
        return ProperFeVerdict(False, verdict, uniform_shift=verdict.certificate.k)
    return ProperFeVerdict(False, verdict)


def includes_translate(a: NatSet, b: NatSet, horizon: int = ns.DEFAULT_HORIZON,
                       k_max: int = 1024) -> Verdict:
    """Least k with A + k ⊆ B.

    Exact when both sets are decidable (k < t_B + p_B suffices) or when A is
    finite and B decidable.  Generator tiers give True only with a proof
    (finite A, or matching block forms) and otherwise Unknown with the least
    shift that survived the horizon.
    """
    if a.decidable and b.decidable:
        v = fe_decide(a, b)
        if v.embeds:
            return Verdict.true(v.certificate.k)
        return Verdict.false(v.refutation.to_dict())
    if isinstance(a, Finite):
        ks = translate_witnesses(a, b, 0, horizon)
        return Verdict.true(ks[0]) if ks else Verdict.unknown(horizon)
    k_range = min(horizon, k_max)
    exhaustive = False
    if b.decidable:
        nb = ns.as_periodic(b)
        exhaustive = k_range >= nb.threshold + nb.period
        k_range = min(k_range, nb.threshold + nb.period)
    candidate = None
    for k in range(k_range):
        v = ns.is_subset(ns.shift_right(a, k), b, horizon + k)
        if v.is_true:
            return Verdict.true(k)
        if v.is_unknown and candidate is None:
            candidate = k
    if candidate is None and exhaustive:
        return Verdict.false(note="every shift below threshold + period of B has a refuting element")
    return Verdict.unknown(horizon, witness=candidate)


# ---------------------------------------------------------------------------
# constructive B'


@dataclass(frozen=True)
class BPrimeResult:
    """B' = union of the pieces (A ∩ n) + k_n with k_n > k_j + j for j < n."""

    bprime: Finite
    shifts: tuple  # k_1, k_2, ...
    n_max: int

    def to_dict(self):
        return {"bprime": list(self.bprime.items), "shifts": list(self.shifts), "n_max": self.n_max}


def construct_bprime(a: NatSet, b: NatSet, n_max: int = 64, k_cap: int = DEFAULT_K_CAP) -> BPrimeResult:
    """Greedy least-k construction for n = 1..n_max.

    Raises WitnessExhausted (with the partial result attached) when some
    prefix has no admissible shift <= k_cap.
    """
    elems = list(a.elements(n_max))
    w = b.window_bits(0, k_cap + 1 + n_max)
    width = k_cap + 1
    acc = B.ones(width)
    shifts: list[int] = []
    pieces: set[int] = set()
    floor = 0  # least admissible k: one more than max(k_j + j)
    idx = 0
    for n in range(1, n_max + 1):
        if idx < len(elems) and elems[idx] == n - 1:
            acc &= w >> (n - 1)
            idx += 1
        free = (acc >> floor) << floor
        if not free:
            partial = BPrimeResult(Finite(tuple(sorted(pieces))), tuple(shifts), n - 1)
            raise WitnessExhausted(n, k_cap, partial)
        k = B.lowest(free)
        shifts.append(k)
        pieces.update(x + k for x in elems[:idx])
        floor = max(floor, k + n + 1)
    return BPrimeResult(Finite(tuple(sorted(pieces))), tuple(shifts), n_max)


def fe_equiv(a: NatSet, b: NatSet, n_max: int = 64, k_max: int = DEFAULT_K_CAP) -> tuple[FeVerdict, FeVerdict]:
    """Both directions; no claim about equivalence classes is made."""
    return fe(a, b, n_max, k_max), fe(b, a, n_max, k_max)


# ---------------------------------------------------------------------------
# independent re-checking


def verify_verdict(a: NatSet, b: NatSet, verdict: FeVerdict) -> bool:
    """Re-check evidence by direct membership tests, independent of the
    word-parallel scans that produced it."""
    if verdict.status == UNKNOWN:
        return True
    if verdict.embeds:
        cert = verdict.certificate
        if isinstance(cert, ClosureShift):
            return ns.is_subset(a, ns.shift_left(b, cert.k)).is_true
        if isinstance(cert, UniformShift):
            return ns.is_subset(ns.shift_right(a, cert.k), b).is_true
        return all(all(b.contains(x + k) for x in a.elements(n)) for n, k in cert.pairs)
    ref = verdict.refutation
    f = ref.finite_part
    if not all(a.contains(x) for x in f.items):
        return False
    ex = ref.exhaustiveness
    if isinstance(ex, BoundedDomain):
        if not f.items or not isinstance(b, Finite) or (b.items and b.max >= ex.bound):
            return False
        return all(any(not b.contains(x + k) for x in f.items) for k in range(ex.bound))
    if not b.decidable:
        return False
    nb = ns.as_periodic(b)
    if ex.threshold < nb.threshold or ex.period % nb.period:
        return False
    covered = {k for k, _ in ex.transcript}
    if covered != set(range(ex.threshold + ex.period)):
        return False
    return all(x in f.items and a.contains(x) and not b.contains(x + k) for k, x in ex.transcript)
