"""Built-in named sets: the powers of two P, the thick density-zero set Q,
and the squares."""
from __future__ import annotations

import itertools
import math

from .blocks import BlockForm
from .natset import Generator, NatSet


def _is_pow2(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def _pow2_stream():
    x = 1
    while True:
        yield x
        x <<= 1


def _in_q(x: int) -> bool:
    # x = 2^m + k with k < m; the blocks [2^m, 2^m + m) never overlap
    if x < 2:
        return False
    m = x.bit_length() - 1
    return x - (1 << m) < m


def _q_stream():
    for m in itertools.count(1):
        base = 1 << m
        yield from range(base, base + m)


def _q_bound(n: int) -> int:
    # the n-th element (0-based) sits in block m where m(m-1)/2 <= n < m(m+1)/2
    m = 1
    while m * (m + 1) // 2 <= n:
        m += 1
    return (1 << m) + m - 1


def _is_square(x: int) -> bool:
    r = math.isqrt(x)
    return r * r == x


def pow2() -> Generator:
    """P = {2^m : m >= 0}."""
    return Generator("pow2", _is_pow2, _pow2_stream, lambda n: 1 << n,
                     blocks=BlockForm(0, 0, 1, 0))


def qset() -> Generator:
    """Q = {2^m + k : k < m}."""
    return Generator("qset", _in_q, _q_stream, _q_bound, blocks=BlockForm(0, 1, 0, 1))


def squares() -> Generator:
    return Generator("squares", _is_square, lambda: (i * i for i in itertools.count()),
                     lambda n: n * n)


def builtin_corpus() -> dict[str, NatSet]:
    return {"pow2": pow2(), "qset": qset(), "squares": squares()}
