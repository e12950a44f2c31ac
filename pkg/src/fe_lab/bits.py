"""Bit-vector helpers over Python ints (bit i <-> natural i).

Python ints are arbitrary-width words, so shifts and ANDs on them are the
word-parallel primitives used throughout the package.
"""
from __future__ import annotations

import numpy as np


def ones(n: int) -> int:
    return (1 << n) - 1 if n > 0 else 0


def repeat(mask: int, period: int, length: int) -> int:
    """Tile ``mask`` (``period`` bits wide) until ``length`` bits are covered."""
    if length <= 0:
        return 0
    out, width = mask, period
    while width < length:
        out |= out << width
        width *= 2
    return out & ones(length)


def get(bits: int, i: int) -> bool:
    return (bits >> i) & 1 == 1


def popcount(x: int) -> int:
    return bin(x).count("1")


def lowest(x: int) -> int:
    """Index of the lowest set bit; ``x`` must be nonzero."""
    return (x & -x).bit_length() - 1


def to_array(bits: int, length: int) -> np.ndarray:
    """Unpack the low ``length`` bits into a uint8 array of 0/1."""
    if length <= 0:
        return np.zeros(0, dtype=np.uint8)
    nbytes = (length + 7) // 8
    raw = np.frombuffer((bits & ones(length)).to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


def from_positions(positions) -> int:
    out = 0
    for x in positions:
        out |= 1 << x
    return out


def positions(bits: int, offset: int = 0) -> list[int]:
    """Sorted indices of set bits, each plus ``offset``."""
    if bits == 0:
        return []
    if bits.bit_length() <= 256:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1 + offset)
            bits ^= low
        return out
    arr = to_array(bits, bits.bit_length())
    return (np.flatnonzero(arr) + offset).tolist()


def rotate(mask: int, period: int, r: int) -> int:
    """Rotate a ``period``-bit mask so that new bit i equals old bit (i + r) mod period."""
    r %= period
    if r == 0:
        return mask
    return ((mask >> r) | (mask << (period - r))) & ones(period)


def max_run(arr: np.ndarray) -> int:
    """Longest run of ones in a 0/1 array."""
    if arr.size == 0 or not arr.any():
        return 0
    padded = np.concatenate(([0], arr.astype(np.int8), [0]))
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max())
