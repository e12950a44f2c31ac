"""Seeded random eventually periodic sets and pairs for the randomized checks."""
from __future__ import annotations

import random

from . import bits as B
from . import natset as ns
from .natset import NatSet


def random_ep(rng: random.Random, max_t: int = 16, max_p: int = 12) -> NatSet:
    """Random set with threshold <= max_t and period <= max_p, in canonical form."""
    t = rng.randint(0, max_t)
    p = rng.randint(1, max_p)
    q = rng.choice((0.3, 0.5, 0.7, 0.9))
    trans = B.from_positions(i for i in range(t) if rng.random() < q)
    mask = B.from_positions(i for i in range(p) if rng.random() < q)
    return ns._ep(t, trans, p, mask)


def random_embeds_pair(rng: random.Random, max_t: int = 16, max_p: int = 12,
                       proper: bool = False) -> tuple[NatSet, NatSet]:
    """(A, B) with A ≤fe B by construction: A = (B - k) ∩ R.

    With ``proper`` the shift k is drawn from [t_B, t_B + p_B), so every
    finite part of A has infinitely many translates inside B.
    """
    b = random_ep(rng, max_t, max_p)
    nb = ns.as_periodic(b)
    if proper:
        k = rng.randrange(nb.threshold, nb.threshold + nb.period)
    else:
        k = rng.randrange(nb.threshold + nb.period)
    r = random_ep(rng, max_t, max_p)
    return ns.intersect(ns.shift_left(b, k), r), b


def random_pair(rng: random.Random, max_t: int = 16, max_p: int = 12) -> tuple[NatSet, NatSet]:
    """Half constructed Embeds pairs, half independent draws."""
    if rng.random() < 0.5:
        return random_embeds_pair(rng, max_t, max_p)
    return random_ep(rng, max_t, max_p), random_ep(rng, max_t, max_p)


def random_cofinite(rng: random.Random, max_t: int = 16) -> NatSet:
    t = rng.randint(0, max_t)
    return ns._ep(t, rng.getrandbits(t) if t else 0, 1, 1)


def random_non_thick(rng: random.Random, max_t: int = 16, max_p: int = 12) -> NatSet:
    """A random set whose tail has at least one zero (so it is not cofinite)."""
    while True:
        s = random_ep(rng, max_t, max_p)
        e = ns.as_periodic(s)
        if not (e.period == 1 and e.mask == 1):
            return s


def random_finite_base_sets(rng: random.Random, count: int = 3, max_t: int = 8,
                            max_p: int = 6) -> list[NatSet]:
    """Sets with a common element, so the base they form has the FIP."""
    while True:
        sets = [random_ep(rng, max_t, max_p) for _ in range(count)]
        common = sets[0]
        for s in sets[1:]:
            common = ns.intersect(common, s)
        if ns.is_empty(common).is_false:
            return sets
