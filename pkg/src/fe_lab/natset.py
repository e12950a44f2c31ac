"""Exact representations of subsets of the naturals.

Three tiers, from most to least decidable:

* ``Finite`` -- an explicit sorted tuple of elements.
* ``EventuallyPeriodic`` -- a transient bit-vector on ``[0, t)`` followed by a
  period mask of length ``p`` repeated forever.  Every Boolean operation and
  both shifts are closed and exact on this tier.
* ``Generator`` -- a membership predicate plus a monotone enumerator.  Only
  horizon-bounded answers are possible in general; an optional ``BlockForm``
  allows exact inclusion proofs for sparse exponential sets.

Bit-vectors are Python ints with bit i standing for the natural number i.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from . import bits as B
from .blocks import BlockForm
from .errors import ComplementOfGeneratorTier, TierError

DEFAULT_HORIZON = 1 << 16


# ---------------------------------------------------------------------------
# three-valued verdicts


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """A True/False/Unknown answer.  True and False carry the evidence the
    producing operation promises; Unknown records the exhausted horizon."""

    truth: Truth
    witness: Any = None
    horizon: Optional[int] = None
    note: str = ""

    @classmethod
    def true(cls, witness=None, note=""):
        return cls(Truth.TRUE, witness, None, note)

    @classmethod
    def false(cls, witness=None, note=""):
        return cls(Truth.FALSE, witness, None, note)

    @classmethod
    def unknown(cls, horizon, witness=None, note=""):
        return cls(Truth.UNKNOWN, witness, horizon, note)

    @property
    def is_true(self) -> bool:
        return self.truth is Truth.TRUE

    @property
    def is_false(self) -> bool:
        return self.truth is Truth.FALSE

    @property
    def is_unknown(self) -> bool:
        return self.truth is Truth.UNKNOWN

    def to_dict(self) -> dict:
        out = {"status": self.truth.value}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.horizon is not None:
            out["horizon"] = self.horizon
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(obj):
    if isinstance(obj, NatSet):
        return describe(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# set types


class NatSet:
    """Common base of the three tiers."""

    tier: str = ""

    def contains(self, x: int) -> bool:
        raise NotImplementedError

    def elements(self, below: int) -> Iterator[int]:
        """Ascending elements smaller than ``below``."""
        raise NotImplementedError

    def window_bits(self, lo: int, hi: int) -> int:
        """Bits of ``S ∩ [lo, hi)`` with bit 0 standing for ``lo``."""
        out = 0
        for x in self.elements(hi):
            if x >= lo:
                out |= 1 << (x - lo)
        return out

    @property
    def decidable(self) -> bool:
        return isinstance(self, (Finite, EventuallyPeriodic))

    def __contains__(self, x: int) -> bool:
        return x >= 0 and self.contains(x)

    def __and__(self, other):
        return intersect(self, other)

    def __or__(self, other):
        return union(self, other)

    def __invert__(self):
        return complement(self)

    def __rshift__(self, k: int):
        return shift_right(self, k)

    def __lshift__(self, k: int):
        return shift_left(self, k)

    def __str__(self):
        return describe(self)


@dataclass(frozen=True, repr=False)
class Finite(NatSet):
    items: tuple = ()

    tier = "finite"

    def __post_init__(self):
        elems = tuple(int(x) for x in self.items)
        if any(x < 0 for x in elems):
            raise ValueError("naturals only")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise ValueError("Finite elements must be strictly increasing")
        object.__setattr__(self, "items", elems)

    def contains(self, x: int) -> bool:
        i = bisect_left(self.items, x)
        return i < len(self.items) and self.items[i] == x

    def elements(self, below: int) -> Iterator[int]:
        return iter(self.items[: bisect_left(self.items, below)])

    def window_bits(self, lo: int, hi: int) -> int:
        i, j = bisect_left(self.items, lo), bisect_left(self.items, hi)
        return B.from_positions(x - lo for x in self.items[i:j])

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def max(self) -> int:
        return self.items[-1]

    def __repr__(self):
        return f"Finite({list(self.items)})"


def finite(xs: Iterable[int] = ()) -> Finite:
    return Finite(tuple(sorted(set(xs))))


@dataclass(frozen=True, repr=False)
class EventuallyPeriodic(NatSet):
    """Membership of x is ``transient`` bit x for x < threshold and
    ``mask`` bit ``(x - threshold) % period`` otherwise."""

    threshold: int
    transient: int
    period: int
    mask: int

    tier = "eventually_periodic"

    def __post_init__(self):
        if self.threshold < 0 or self.period < 1:
            raise ValueError("threshold must be >= 0 and period >= 1")
        if self.transient >> self.threshold or self.transient < 0:
            raise ValueError("transient has bits at or above the threshold")
        if self.mask >> self.period or self.mask < 0:
            raise ValueError("mask wider than the period")

    def contains(self, x: int) -> bool:
        if x < self.threshold:
            return B.get(self.transient, x)
        return B.get(self.mask, (x - self.threshold) % self.period)

    def window_bits(self, lo: int, hi: int) -> int:
        if hi <= lo:
            return 0
        t, p = self.threshold, self.period
        out = 0
        if lo < t:
            out = (self.transient >> lo) & B.ones(min(t, hi) - lo)
        start = max(lo, t)
        if start < hi:
            phase = B.rotate(self.mask, p, (start - t) % p)
            out |= B.repeat(phase, p, hi - start) << (start - lo)
        return out

    def elements(self, below: int) -> Iterator[int]:
        return iter(B.positions(self.window_bits(0, below)))

    @property
    def ones_in_period(self) -> int:
        return B.popcount(self.mask)

    def __repr__(self):
        return (f"EventuallyPeriodic(t={self.threshold}, transient={_bitstr(self.transient, self.threshold)!r}, "
                f"mask={_bitstr(self.mask, self.period)!r})")


@dataclass(frozen=True, eq=False, repr=False)
class Generator(NatSet):
    """A set known through a predicate and a strictly increasing enumerator.

    ``bounded`` (when given) enumerates the elements below a bound and must
    terminate; wrappers built by the set operations always provide it.
    ``blocks`` is an optional exact description of the set beyond some point.
    """

    name: str
    membership: Callable[[int], bool]
    enumerator: Callable[[], Iterator[int]]
    element_bound: Optional[Callable[[int], int]] = None
    blocks: Optional[BlockForm] = None
    bounded: Optional[Callable[[int], Iterable[int]]] = field(default=None, compare=False)

    tier = "generator"

    def contains(self, x: int) -> bool:
        return x >= 0 and bool(self.membership(x))

    def elements(self, below: int) -> Iterator[int]:
        if self.bounded is not None:
            return iter(self.bounded(below))
        return itertools.takewhile(lambda x: x < below, self.enumerator())

    def first(self, count: int) -> list[int]:
        """The first ``count`` elements, using ``element_bound`` when present."""
        if self.element_bound is not None and count > 0:
            return list(self.elements(self.element_bound(count - 1) + 1))[:count]
        return list(itertools.islice(self.enumerator(), count))

    def __repr__(self):
        return f"Generator({self.name})"


def _bitstr(bits: int, width: int) -> str:
    return "".join("1" if B.get(bits, i) else "0" for i in range(width))


def _wrap(name: str, contains, bounded, blocks=None) -> Generator:
    def stream():
        lo, hi = 0, 64
        while True:
            for x in bounded(hi):
                if x >= lo:
                    yield x
            lo, hi = hi, hi * 2

    return Generator(name, contains, stream, blocks=blocks, bounded=bounded)


# ---------------------------------------------------------------------------
# constructors


def naturals() -> EventuallyPeriodic:
    return EventuallyPeriodic(0, 0, 1, 1)


def empty() -> Finite:
    return Finite(())


def interval(lo: int, hi: int) -> Finite:
    """Half-open ``[lo, hi)``."""
    return Finite(tuple(range(lo, max(lo, hi))))


def ap(a: int, d: int) -> NatSet:
    """The progression a, a+d, a+2d, ... (just {a} when d == 0)."""
    if d == 0:
        return Finite((a,))
    return canonical(EventuallyPeriodic(a, 0, d, 1))


def per(transient: str, mask: str) -> NatSet:
    """Set from bit strings, position 0 first: transient over [0, t), then mask repeated."""
    if not mask:
        raise ValueError("period mask must be nonempty")
    t_bits = int(transient[::-1], 2) if transient else 0
    m_bits = int(mask[::-1], 2)
    return canonical(EventuallyPeriodic(len(transient), t_bits, len(mask), m_bits))


def from_predicate(threshold: int, period: int, pred: Callable[[int], bool]) -> NatSet:
    """Eventually periodic set whose membership below ``threshold + period`` is ``pred``."""
    bits = B.from_positions(x for x in range(threshold + period) if pred(x))
    return _ep(threshold, bits & B.ones(threshold), period, bits >> threshold)


# ---------------------------------------------------------------------------
# normal forms


def _params(s: NatSet) -> tuple[int, int, int, int]:
    if isinstance(s, EventuallyPeriodic):
        return s.threshold, s.transient, s.period, s.mask
    if isinstance(s, Finite):
        t = s.max + 1 if s.items else 0
        return t, s.window_bits(0, t), 1, 0
    raise TierError(f"{describe(s)} is generator-tier; an exact answer needs a finite or eventually periodic set")


def as_periodic(s: NatSet) -> EventuallyPeriodic:
    """Normalized eventually periodic form of a decidable set."""
    return normalize(EventuallyPeriodic(*_params(s)))


def normalize(s: EventuallyPeriodic) -> EventuallyPeriodic:
    """Minimal period, then minimal threshold."""
    t, trans, p, mask = s.threshold, s.transient, s.period, s.mask
    for d in range(1, p + 1):
        if p % d == 0 and B.rotate(mask, p, d) == mask:
            p, mask = d, mask & B.ones(d)
            break
    top = p - 1
    while t > 0 and B.get(trans, t - 1) == B.get(mask, top):
        mask = ((mask << 1) | (mask >> top)) & B.ones(p)
        t -= 1
        trans &= B.ones(t)
    return EventuallyPeriodic(t, trans, p, mask)


def canonical(s: NatSet) -> NatSet:
    """Finite when the tail is empty, normalized eventually periodic otherwise.
    Generators are returned unchanged."""
    if isinstance(s, Generator):
        return s
    n = as_periodic(s)
    if n.mask == 0:
        return Finite(tuple(B.positions(n.transient)))
    return n


def _ep(t: int, trans: int, p: int, mask: int) -> NatSet:
    return canonical(EventuallyPeriodic(t, trans & B.ones(t), p, mask & B.ones(p)))


def same_set(a: NatSet, b: NatSet) -> bool:
    """Structural equality of normal forms (decidable tier only)."""
    return canonical(a) == canonical(b)


# ---------------------------------------------------------------------------
# operations


def member(s: NatSet, x: int) -> bool:
    return x in s


@dataclass(frozen=True)
class Window:
    """Half-open window ``[lo, hi)`` of a set; bit i of ``bits`` is membership of lo + i."""

    lo: int
    hi: int
    bits: int

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("hi < lo")

    def __contains__(self, x: int) -> bool:
        return self.lo <= x < self.hi and B.get(self.bits, x - self.lo)

    def __len__(self):
        return self.hi - self.lo

    def elements(self) -> list[int]:
        return B.positions(self.bits, self.lo)

    def count(self) -> int:
        return B.popcount(self.bits)


def window(s: NatSet, lo: int, hi: int) -> Window:
    return Window(lo, hi, s.window_bits(lo, hi) if hi > lo else 0)


def shift_right(s: NatSet, k: int) -> NatSet:
    """``S + k``."""
    if k < 0:
        raise ValueError("shift must be a natural number")
    if k == 0:
        return s
    if isinstance(s, Finite):
        return Finite(tuple(x + k for x in s.items))
    if isinstance(s, EventuallyPeriodic):
        return _ep(s.threshold + k, s.transient << k, s.period, s.mask)
    return _wrap(
        f"({describe(s)} >> {k})",
        lambda x: x >= k and s.contains(x - k),
        lambda h: (x + k for x in s.elements(max(0, h - k))),
        s.blocks.shift_right(k) if s.blocks else None,
    )


def shift_left(s: NatSet, k: int) -> NatSet:
    """``S - k = {x : x + k in S}``."""
    if k < 0:
        raise ValueError("shift must be a natural number")
    if k == 0:
        return s
    if isinstance(s, Finite):
        return Finite(tuple(x - k for x in s.items if x >= k))
    if isinstance(s, EventuallyPeriodic):
        t = max(s.threshold - k, 0)
        w = s.window_bits(k, k + t + s.period)
        return _ep(t, w, s.period, w >> t)
    return _wrap(
        f"({describe(s)} << {k})",
        lambda x: s.contains(x + k),
        lambda h: (x - k for x in s.elements(h + k) if x >= k),
        s.blocks.shift_left(k) if s.blocks else None,
    )


def _combine(a: NatSet, b: NatSet, op) -> NatSet:
    ta, _, pa, _ = _params(a)
    tb, _, pb, _ = _params(b)
    t, p = max(ta, tb), math.lcm(pa, pb)
    n = t + p
    r = op(a.window_bits(0, n), b.window_bits(0, n)) & B.ones(n)
    return _ep(t, r, p, r >> t)


def _merge(a: NatSet, b: NatSet, h: int) -> Iterator[int]:
    prev = None
    for x in heapq.merge(a.elements(h), b.elements(h)):
        if x != prev:
            yield x
            prev = x


def intersect(a: NatSet, b: NatSet) -> NatSet:
    if a.decidable and b.decidable:
        return _combine(a, b, lambda x, y: x & y)
    if isinstance(a, Finite) or isinstance(b, Finite):
        f, other = (a, b) if isinstance(a, Finite) else (b, a)
        return Finite(tuple(x for x in f.items if other.contains(x)))
    gen, other = (a, b) if isinstance(a, Generator) else (b, a)
    blocks = None
    if isinstance(other, Generator) and gen.blocks and other.blocks:
        blocks = gen.blocks.intersect(other.blocks)
    return _wrap(
        f"({describe(a)} & {describe(b)})",
        lambda x: a.contains(x) and b.contains(x),
        lambda h: (x for x in gen.elements(h) if other.contains(x)),
        blocks,
    )


def union(a: NatSet, b: NatSet) -> NatSet:
    if a.decidable and b.decidable:
        return _combine(a, b, lambda x, y: x | y)
    blocks = None
    for g, f in ((a, b), (b, a)):
        if isinstance(g, Generator) and g.blocks and isinstance(f, Finite):
            blocks = g.blocks.tail(f.max + 1) if f.items else g.blocks
    return _wrap(
        f"({describe(a)} | {describe(b)})",
        lambda x: a.contains(x) or b.contains(x),
        lambda h: _merge(a, b, h),
        blocks,
    )


def difference(a: NatSet, b: NatSet) -> NatSet:
    """``A \\ B``; defined for every tier because only A is enumerated."""
    if a.decidable and b.decidable:
        return _combine(a, b, lambda x, y: x & ~y)
    if isinstance(a, Finite):
        return Finite(tuple(x for x in a.items if not b.contains(x)))
    blocks = None
    if isinstance(a, Generator) and a.blocks and isinstance(b, Finite):
        blocks = a.blocks.tail(b.max + 1) if b.items else a.blocks
    return _wrap(
        f"({describe(a)} \\ {describe(b)})",
        lambda x: a.contains(x) and not b.contains(x),
        lambda h: (x for x in a.elements(h) if not b.contains(x)),
        blocks,
    )


def complement(s: NatSet) -> NatSet:
    if isinstance(s, Generator):
        raise ComplementOfGeneratorTier(f"cannot complement generator-tier set {describe(s)}")
    t, trans, p, mask = _params(s)
    return _ep(t, ~trans, p, ~mask)


def tail(s: NatSet, n: int) -> NatSet:
    """``S \\ [0, n)``."""
    if n <= 0:
        return s
    if s.decidable:
        return difference(s, interval(0, n))
    return _wrap(
        f"({describe(s)} \\ interval(0,{n}))",
        lambda x: x >= n and s.contains(x),
        lambda h: (x for x in s.elements(h) if x >= n),
        s.blocks.tail(n) if s.blocks else None,
    )


def residues(s: NatSet, m: int) -> frozenset:
    """Residues mod m of the tail elements, read off one lcm(p, m) block."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    e = as_periodic(s)
    if e.mask == 0:
        return frozenset()
    t = e.threshold
    span = math.lcm(e.period, m)
    return frozenset(x % m for x in B.positions(e.window_bits(t, t + span), t))


def is_empty(s: NatSet, horizon: int = DEFAULT_HORIZON) -> Verdict:
    if s.decidable:
        e = as_periodic(s)
        return Verdict.true() if e.transient == 0 and e.mask == 0 else Verdict.false(
            next(s.elements(e.threshold + e.period)))
    for x in s.elements(horizon):
        return Verdict.false(x)
    return Verdict.unknown(horizon)


def first_element(s: NatSet, horizon: int = DEFAULT_HORIZON) -> Optional[int]:
    if s.decidable:
        t, _, p, _ = _params(s)
        horizon = t + p
    return next(iter(s.elements(horizon)), None)


def is_subset(a: NatSet, b: NatSet, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """Decide ``A ⊆ B``.  False always carries the least refuting element found."""
    if isinstance(a, Finite):
        for x in a.items:
            if not b.contains(x):
                return Verdict.false(x)
        return Verdict.true()
    if a.decidable and b.decidable:
        ta, _, pa, _ = _params(a)
        tb, _, pb, _ = _params(b)
        n = max(ta, tb) + math.lcm(pa, pb)
        bad = a.window_bits(0, n) & ~b.window_bits(0, n)
        return Verdict.false(B.lowest(bad)) if bad else Verdict.true()
    if isinstance(a, Generator) and isinstance(b, Generator) and a.blocks and b.blocks:
        m = a.blocks.eventual_subset(b.blocks)
        if m is not None:
            cut = (1 << m) + a.blocks.offset
            for x in a.elements(cut):
                if not b.contains(x):
                    return Verdict.false(x)
            return Verdict.true({"proof": "blocks", "from_exponent": m, "checked_below": cut})
    if isinstance(b, Finite) and b.items:
        horizon = max(horizon, b.max + 2)
    for x in a.elements(horizon):
        if not b.contains(x):
            return Verdict.false(x)
    return Verdict.unknown(horizon)


def describe(s: NatSet) -> str:
    """Expression text for a set; parseable for the decidable tier."""
    if isinstance(s, Finite):
        if not s.items:
            return "empty"
        return "{" + ",".join(map(str, s.items)) + "}"
    if isinstance(s, EventuallyPeriodic):
        return f"per({_bitstr(s.transient, s.threshold)};{_bitstr(s.mask, s.period)})"
    return s.name
