"""Exponential block forms: sets that are, beyond some point, unions of
blocks ``[2^m + offset, 2^m + offset + slope*m + intercept)``.

A block form attached to a generator-tier set lets inclusion questions about
sparse sets such as the powers of two be settled exactly: blocks at the same
exponent are compared symbolically and only a finite prefix is enumerated.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class BlockForm:
    """For every x >= ``start``: x is a member iff x lies in block(m) for some m >= m0.

    Blocks for m >= m0 are pairwise disjoint and increasing, which holds
    whenever ``length(m) <= 2**m`` from m0 on.
    """

    offset: int
    slope: int
    intercept: int
    m0: int

    def __post_init__(self):
        if self.slope < 0:
            raise ValueError("block slope must be nonnegative")
        m = self.m0
        if (1 << m) + self.offset < 0 or self.length(m) > (1 << m) or self.slope > (1 << m):
            raise ValueError(f"block form invalid at m0={m}; use BlockForm.make")

    @classmethod
    def make(cls, offset: int, slope: int, intercept: int, m0: int = 0) -> "BlockForm":
        """Build a form, raising m0 until the validity conditions hold."""
        m = max(m0, 0)
        while ((1 << m) + offset < 0 or slope * m + intercept > (1 << m)
               or slope > (1 << m)):
            m += 1
        return cls(offset, slope, intercept, m)

    def length(self, m: int) -> int:
        return max(0, self.slope * m + self.intercept)

    def block(self, m: int) -> tuple[int, int]:
        lo = (1 << m) + self.offset
        return lo, lo + self.length(m)

    @property
    def start(self) -> int:
        return (1 << self.m0) + self.offset

    @property
    def unbounded_runs(self) -> bool:
        return self.slope > 0

    def contains(self, x: int) -> bool:
        """Block membership; meaningful only for x >= start."""
        if x < self.start:
            raise ValueError("block form says nothing below its start")
        m = (x - self.offset).bit_length() - 1
        lo, hi = self.block(m)
        return lo <= x < hi

    def shift_right(self, k: int) -> "BlockForm":
        return BlockForm.make(self.offset + k, self.slope, self.intercept, self.m0)

    def shift_left(self, k: int) -> "BlockForm":
        return BlockForm.make(self.offset - k, self.slope, self.intercept, self.m0)

    def tail(self, n: int) -> "BlockForm":
        """Form for S minus [0, n)."""
        m = self.m0
        while (1 << m) + self.offset < n:
            m += 1
        return replace(self, m0=m)

    def intersect(self, other: "BlockForm") -> "BlockForm":
        a, b = self, other
        offset = max(a.offset, b.offset)
        # block ends are affine in m; the eventually smaller one wins
        ends = sorted(((f.slope, f.offset + f.intercept) for f in (a, b)))
        (s_lo, k_lo), (s_hi, k_hi) = ends
        if s_lo == s_hi:
            cross = 0
        else:
            cross = max(0, _ceil_div(k_lo - k_hi, s_hi - s_lo))
        m = max(a.m0, b.m0, cross)
        gap = abs(a.offset - b.offset)
        while any(f.length(m) + gap > (1 << m) or f.slope > (1 << m) for f in (a, b)):
            m += 1
        return BlockForm.make(offset, s_lo, k_lo - offset, m)

    def eventual_subset(self, other: "BlockForm") -> Optional[int]:
        """Least-effort M such that block(m) of self lies inside block(m) of other
        for every m >= M, or None when no such M exists."""
        lo = max(self.m0, other.m0)
        if self.slope == 0 and self.intercept <= 0:
            return lo  # self's blocks are eventually empty
        if other.offset > self.offset:
            return None
        diff = other.slope - self.slope
        const = (other.offset + other.intercept) - (self.offset + self.intercept)
        if diff < 0 or (diff == 0 and const < 0):
            return None
        if diff == 0:
            return lo
        return max(lo, _ceil_div(-const, diff))
