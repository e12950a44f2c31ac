"""Filter bases as computable stand-ins for ultrafilters.

A ``FilterBase`` is a finite family; the filter it generates is exactly the
supersets of the intersection of all generators, so membership is one subset
test.  A ``ParametricBase`` is a descending chain G_0 ⊇ G_1 ⊇ ...:

* ``tails``: G_n = S minus [0, n)
* ``shiftsdown``: G_n = the intersection of S - k over k <= n

For a finite S the tails chain stops at ``index_cap``.  Otherwise the chain is
infinite.  ``index_cap`` then bounds the search on the generator tier, but an
exact argument may go past it.  Verdicts are three-valued and Unknown
propagates: a composite answer is True or False only when every sub-answer it
rests on is.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from . import natset as ns
from .embed import DEFAULT_K_CAP, UniformShift, fe, includes_translate
from .errors import FipViolation
from .natset import Finite, Generator, NatSet, Truth, Verdict

SEARCH_LIMIT = 1 << 20


# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True, eq=False)
class FilterBase:
    generators: tuple
    horizon: int = ns.DEFAULT_HORIZON
    fip: Verdict = field(init=False, repr=False)
    core: NatSet = field(init=False, repr=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a filter base needs at least one generator")
        object.__setattr__(self, "generators", gens)
        core = gens[0]
        for g in gens[1:]:
            core = ns.intersect(core, g)
        object.__setattr__(self, "core", core)
        empty = ns.is_empty(core, self.horizon)
        if empty.is_false:
            fip = Verdict.true(empty.witness)
        elif empty.is_true:
            fip = Verdict.false(note="the generators have empty intersection")
        else:
            fip = Verdict.unknown(self.horizon, note=f"FIP unverified (horizon {self.horizon})")
        object.__setattr__(self, "fip", fip)

    def describe(self) -> str:
        return "base{" + ", ".join(ns.describe(g) for g in self.generators) + "}"


TAILS, SHIFTSDOWN = "tails", "shiftsdown"


@dataclass(frozen=True, eq=False)
class ParametricBase:
    kind: str
    source: NatSet
    index_cap: int

    def __post_init__(self):
        if self.kind not in (TAILS, SHIFTSDOWN):
            raise ValueError(f"unknown chain kind {self.kind!r}")
        if self.index_cap < 0:
            raise ValueError("index_cap must be >= 0")
        if not _nonempty(self.member(self.index_cap)):
            raise FipViolation(f"{self.describe()}: G_{self.index_cap} is empty")

    def describe(self) -> str:
        return f"{self.kind}({ns.describe(self.source)}, {self.index_cap})"

    def member(self, n: int) -> NatSet:
        """G_n."""
        s = self.source
        if self.kind == TAILS:
            return ns.tail(s, n)
        if s.decidable:
            out = s
            for k in range(1, n + 1):
                out = ns.intersect(out, ns.shift_left(s, k))
            return out
        return _window_all(s, n)

    def indices(self) -> tuple[range, bool]:
        """Indices to examine and whether they settle the whole chain.

        A decidable source whose chain never runs dry needs only finitely many
        indices: tails past the threshold repeat up to translation by the
        period, and shiftsdown chains are constant from t + p - 1 on.  A chain
        that does run dry (finite S for tails, non-thick S for shiftsdown)
        ends at ``index_cap``.
        """
        s = self.source
        if s.decidable:
            if self.finite_chain:
                return range(self.index_cap + 1), True
            e = ns.as_periodic(s)
            return range(e.threshold + e.period), True
        return range(self.index_cap + 1), False

    @property
    def finite_chain(self) -> bool:
        s = self.source
        if not s.decidable:
            return False
        e = ns.as_periodic(s)
        return not _nonempty(self.member(e.threshold + e.period))


Base = Union[FilterBase, ParametricBase]


def _window_all(s: Generator, n: int) -> Generator:
    """{x : x, x+1, ..., x+n all in S} for a generator S."""
    blocks = None
    if s.blocks:
        blocks = s.blocks
        for k in range(1, n + 1):
            blocks = blocks.intersect(s.blocks.shift_left(k))
    ok = lambda x: all(s.contains(x + k) for k in range(n + 1))  # noqa: E731
    return ns._wrap(f"shiftsdown({ns.describe(s)})[{n}]", ok,
                    lambda h: (x for x in s.elements(h) if ok(x)), blocks)


def _nonempty(s: NatSet) -> bool:
    if s.decidable:
        return ns.is_empty(s).is_false
    if s.blocks and s.blocks.length(max(s.blocks.m0, 64)) > 0:
        return True
    return ns.is_empty(s, SEARCH_LIMIT).is_false


def _require_fip(*bases: Base):
    for b in bases:
        if isinstance(b, FilterBase) and b.fip.is_false:
            raise FipViolation(f"{b.describe()} lacks the finite intersection property")


def fip_check(base: Base, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    if isinstance(base, ParametricBase):
        g = base.member(base.index_cap)
        x = ns.first_element(g, max(horizon, SEARCH_LIMIT))
        return Verdict.true(x, note=f"G_{base.index_cap} nonempty")
    if base.horizon == horizon or not base.fip.is_unknown:
        return base.fip
    return FilterBase(base.generators, horizon).fip


# ---------------------------------------------------------------------------
# membership


def filter_member(base: Base, x: NatSet, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Is X in the filter generated by ``base``?  True carries the index n of
    a chain member G_n ⊆ X (or the subset proof for a finite base)."""
    _require_fip(base)
    if isinstance(base, FilterBase):
        return ns.is_subset(base.core, x, horizon)
    if base.kind == TAILS:
        return _tails_member(base, x, horizon)
    return _shiftsdown_member(base, x, horizon)


def _tail_hit(base: ParametricBase, n: int) -> Verdict:
    g = base.member(n)
    note = "" if n <= base.index_cap else "index beyond index_cap, proved exactly"
    return Verdict.true({"n": n, "first_element": ns.first_element(g, SEARCH_LIMIT)}, note)


def _tails_member(base: ParametricBase, x: NatSet, horizon: int) -> Verdict:
    s = base.source
    if isinstance(s, Finite) or (s.decidable and x.decidable):
        bad = ns.canonical(ns.difference(s, x))
        if not isinstance(bad, Finite):
            return Verdict.false({"outside": ns.describe(bad)}, "infinitely many elements of S lie outside X")
        n = bad.max + 1 if bad.items else 0
        if base.finite_chain and n > base.index_cap:
            return Verdict.false({"outside": list(bad.items)}, "no chain member up to index_cap fits")
        return _tail_hit(base, n)
    if isinstance(s, Generator) and isinstance(x, Generator) and s.blocks and x.blocks:
        m = s.blocks.eventual_subset(x.blocks)
        if m is not None:
            cut = (1 << m) + s.blocks.offset
            bad = [y for y in s.elements(cut) if not x.contains(y)]
            return _tail_hit(base, bad[-1] + 1 if bad else 0)
    bad = [y for y in s.elements(horizon) if not x.contains(y)]
    return Verdict.unknown(horizon, {"candidate_n": bad[-1] + 1 if bad else 0})


def _shiftsdown_member(base: ParametricBase, x: NatSet, horizon: int) -> Verdict:
    idx, exact = base.indices()
    last = None
    for n in idx:
        v = ns.is_subset(base.member(n), x, horizon)
        if v.is_true:
            return Verdict.true({"n": n})
        last = v
    if exact and last is not None and last.is_false:
        return Verdict.false({"n": idx[-1], "outside": last.witness}, "the last chain member is not inside X")
    return Verdict.unknown(horizon, {"checked_to": idx[-1]}, "verified to index_cap")


def leftward_shift_member(b: NatSet, base: Base, k: int, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Is k in B - V, i.e. is B - k in the filter generated by ``base``?"""
    return filter_member(base, ns.shift_left(b, k), horizon)


# ---------------------------------------------------------------------------
# sums


def _symbolic_tail_start(x: NatSet, v: Base) -> Optional[int]:
    """k0 such that X - k is in <V> for every k >= k0, by block comparison,
    or None when no such uniform argument is available."""
    if not (isinstance(v, ParametricBase) and v.kind == TAILS):
        return None
    a = v.source
    if not (isinstance(x, Generator) and isinstance(a, Generator) and x.blocks and a.blocks):
        return None
    fx, fa = x.blocks, a.blocks
    # X - k has blocks with offset fx.offset - k; containment of A's blocks
    # needs that offset <= fa.offset and a strictly faster-growing length
    if not (fa.slope == 0 and fa.intercept <= 0) and fx.slope <= fa.slope:
        return None
    return max(0, fx.offset - fa.offset)


def filter_sum_member(x: NatSet, u: Base, v: Base, horizon: int = ns.DEFAULT_HORIZON) -> Verdict:
    """Is X in U + V, i.e. is K = {k : X - k ∈ <V>} in <U>?

    K is bracketed by two eventually periodic sets.  Unknown inner answers go
    into the upper bound only.  The answer is True when <U> contains the lower
    bound and False when <U> misses the upper bound.
    """
    _require_fip(u, v)
    inner = {}

    def probe(k):
        r = leftward_shift_member(x, v, k, horizon)
        inner[k] = r
        return r

    if x.decidable:
        e = ns.as_periodic(x)
        t, p = e.threshold, e.period
        results = {k: probe(k) for k in range(t + p)}
        lower = ns.from_predicate(t, p, lambda k: results[k].is_true)
        upper = ns.from_predicate(t, p, lambda k: not results[k].is_false)
        proof = {"periodic_in_k": {"threshold": t, "period": p}}
    else:
        k0 = _symbolic_tail_start(x, v)
        if k0 is not None:
            results = {k: probe(k) for k in range(k0)}
            lower = ns.from_predicate(k0, 1, lambda k: k >= k0 or results[k].is_true)
            upper = ns.from_predicate(k0, 1, lambda k: k >= k0 or not results[k].is_false)
            proof = {"all_k_from": k0}
        else:
            results = {k: probe(k) for k in range(horizon)}
            lower = ns.finite(k for k, r in results.items() if r.is_true)
            upper = ns.from_predicate(horizon, 1, lambda k: k >= horizon or not results[k].is_false)
            proof = {"checked_k_below": horizon}
    witness = {"K_lower": ns.describe(lower), "K_upper": ns.describe(upper), **proof,
               "inner": {k: r.to_dict() for k, r in sorted(inner.items())}}
    hi = filter_member(u, lower, horizon)
    if hi.is_true:
        return Verdict.true(dict(witness, outer=hi.to_dict()))
    lo = filter_member(u, upper, horizon)
    if lo.is_false:
        return Verdict.false(dict(witness, outer=lo.to_dict()))
    return Verdict.unknown(horizon, witness)


# ---------------------------------------------------------------------------
# richness and filter-level embeddability


@dataclass(frozen=True)
class RichnessVerdict:
    """``status`` True when some member of the filter is ≤fe B, with that
    member and its certificate as the witness."""

    status: Verdict
    member: Optional[str] = None
    index: Optional[int] = None
    certificate: Optional[dict] = None

    @property
    def truth(self) -> Truth:
        return self.status.truth

    def to_dict(self):
        out = self.status.to_dict()
        out.update({"member": self.member, "index": self.index, "certificate": self.certificate})
        return out


def _rich_for(a: NatSet, b: NatSet, horizon: int, n_max: int, k_max: int) -> tuple[Truth, Optional[dict]]:
    if a.decidable and b.decidable:
        v = fe(a, b)
        return (Truth.TRUE if v.embeds else Truth.FALSE), (v.certificate or v.refutation).to_dict()
    t = includes_translate(a, b, horizon)
    if t.is_true:
        return Truth.TRUE, UniformShift(t.witness).to_dict()
    v = fe(a, b, n_max, k_max)
    if v.refuted:
        return Truth.FALSE, v.refutation.to_dict()
    evidence = v.certificate.to_dict() if v.certificate else None
    return Truth.UNKNOWN, evidence


def urich_check(u: Base, b: NatSet, horizon: int = ns.DEFAULT_HORIZON, n_max: int = 64,
                k_max: int = DEFAULT_K_CAP) -> RichnessVerdict:
    """Is B U-rich?  Members of <U> are supersets of the base members and
    ≤fe is downward monotone on the left, so only those need testing."""
    _require_fip(u)
    if isinstance(u, FilterBase):
        members, exact = [(None, u.core)], True
    else:
        idx, exact = u.indices()
        members = ((n, u.member(n)) for n in idx)
    saw_unknown = False
    last_evidence = None
    refutations = []
    for n, a in members:
        truth, evidence = _rich_for(a, b, horizon, n_max, k_max)
        if truth is Truth.TRUE:
            return RichnessVerdict(Verdict.true(), ns.describe(a), n, evidence)
        if truth is Truth.UNKNOWN:
            saw_unknown = True
            last_evidence = evidence
        else:
            refutations.append({"index": n, "refutation": evidence})
    if exact and not saw_unknown:
        return RichnessVerdict(Verdict.false(refutations, "no member of the filter is finitely embeddable in B"))
    note = "" if exact else "verified to index_cap"
    return RichnessVerdict(Verdict.unknown(horizon, last_evidence, note))


def filter_fe(u: Base, v: Base, horizon: int = ns.DEFAULT_HORIZON, n_max: int = 64,
              k_max: int = DEFAULT_K_CAP) -> Verdict:
    """Is every member of <V> U-rich?  Richness is upward monotone in B, so
    the base members of V are the only cases."""
    _require_fip(u, v)
    if isinstance(v, FilterBase):
        r = urich_check(u, v.core, horizon, n_max, k_max)
        return Verdict(r.truth, r.to_dict(), r.status.horizon, r.status.note)
    idx, exact = v.indices()
    unknown = []
    for n in idx:
        r = urich_check(u, v.member(n), horizon, n_max, k_max)
        if r.status.is_false:
            return Verdict.false({"index": n, "member": ns.describe(v.member(n))})
        if r.status.is_unknown:
            unknown.append(n)
    if exact and not unknown:
        return Verdict.true({"indices_checked": len(idx)})
    return Verdict.unknown(horizon, {"unknown_indices": unknown, "checked_to": idx[-1]},
                           "verified to index_cap")


# ---------------------------------------------------------------------------
# whole-set translates and the leftward-shift cross-check


@dataclass(frozen=True)
class LeftSumEntry:
    target: str
    holds: Verdict
    member: Optional[str] = None
    k: Optional[int] = None
    crosscheck: Optional[Verdict] = None

    def to_dict(self):
        return {"set": self.target, "holds": self.holds.to_dict(), "member": self.member, "k": self.k,
                "crosscheck": self.crosscheck.to_dict() if self.crosscheck else None}


def left_sum_property(v: Base, w_sets: Sequence[NatSet], horizon: int = ns.DEFAULT_HORIZON) -> list[LeftSumEntry]:
    """For each B: a member A of <V> and k with A + k ⊆ B, cross-checked by
    asking whether B - k is itself in <V>."""
    _require_fip(v)
    if isinstance(v, FilterBase):
        members, exact = [v.core], True
    else:
        idx, exact = v.indices()
        members = [v.member(n) for n in idx]
    out = []
    for b in w_sets:
        entry = None
        undecided = False
        for a in members:
            t = includes_translate(a, b, horizon)
            if t.is_true:
                k = t.witness
                cross = leftward_shift_member(b, v, k, horizon)
                entry = LeftSumEntry(ns.describe(b), Verdict.true(), ns.describe(a), k, cross)
                break
            undecided = undecided or t.is_unknown
        if entry is None:
            holds = (Verdict.unknown(horizon) if undecided or not exact
                     else Verdict.false(note="no member of the filter has a translate inside B"))
            entry = LeftSumEntry(ns.describe(b), holds)
        out.append(entry)
    return out


# ---------------------------------------------------------------------------
# partition regularity experiment


def coloring_pieces(b: NatSet, coloring: str) -> list[tuple[str, NatSet]]:
    """Split B by ``parity``, ``mod:c`` or ``blocks:L:c`` (x gets color (x // L) mod c)."""
    parts = coloring.split(":")
    if parts[0] == "parity" and len(parts) == 1:
        length, c = 1, 2
    elif parts[0] == "mod" and len(parts) == 2:
        length, c = 1, int(parts[1])
    elif parts[0] == "blocks" and len(parts) == 3:
        length, c = int(parts[1]), int(parts[2])
    else:
        raise ValueError(f"unknown coloring {coloring!r}")
    if not 1 <= c <= 4 or length < 1:
        raise ValueError("need 1 <= colors <= 4 and block length >= 1")
    pieces = []
    for r in range(c):
        mask = "".join("1" if i // length == r else "0" for i in range(length * c))
        pieces.append((f"color {r}", ns.intersect(b, ns.per("", mask))))
    return pieces


@dataclass(frozen=True)
class RegularityReport:
    base_rich: RichnessVerdict
    pieces: tuple  # ((label, description, RichnessVerdict), ...)
    gap: Verdict

    @property
    def rich_pieces(self) -> list[str]:
        return [label for label, _, r in self.pieces if r.status.is_true]

    def to_dict(self):
        return {"base_rich": self.base_rich.to_dict(),
                "pieces": [{"color": label, "piece": d, "rich": r.to_dict()} for label, d, r in self.pieces],
                "rich_pieces": self.rich_pieces, "regularity_gap": self.gap.to_dict()}


def regularity_experiment(u: Base, b: NatSet, coloring: str, horizon: int = ns.DEFAULT_HORIZON) -> RegularityReport:
    """Richness of each color class of B.  ``gap`` is True when B is rich but
    no piece is, which finitely generated bases can exhibit."""
    base_rich = urich_check(u, b, horizon)
    pieces = tuple((label, ns.describe(p), urich_check(u, p, horizon)) for label, p in coloring_pieces(b, coloring))
    truths = [r.truth for _, _, r in pieces]
    if Truth.TRUE in truths:
        gap = Verdict.false(note="some piece is rich")
    elif all(t is Truth.FALSE for t in truths) and base_rich.status.is_true:
        gap = Verdict.true(note="B is rich but no piece is")
    elif all(t is Truth.FALSE for t in truths):
        gap = Verdict.false(note="B itself is not rich")
    else:
        gap = Verdict.unknown(horizon)
    return RegularityReport(base_rich, pieces, gap)
