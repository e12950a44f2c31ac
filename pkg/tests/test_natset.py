import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fe_lab import bits as B
from fe_lab import natset as ns
from fe_lab.blocks import BlockForm
from fe_lab.corpus import pow2, qset, squares
from fe_lab.errors import ComplementOfGeneratorTier, TierError
from oracles import oracle_normal_form, params, random_ep

EVENS = ns.ap(0, 2)
ODDS = ns.ap(1, 2)
Q = qset()
P = pow2()

bit_lists = st.lists(st.sampled_from("01"), max_size=16).map("".join)
masks = st.lists(st.sampled_from("01"), min_size=1, max_size=12).map("".join)
ep_sets = st.builds(ns.per, bit_lists, masks)


def members(s, n):
    return [x for x in range(n) if s.contains(x)]


# --- membership -------------------------------------------------------------

def test_member_examples():
    assert ns.member(EVENS, 4)
    assert ns.member(Q, 9) and not ns.member(Q, 3)
    assert ns.member(ns.finite([0, 2, 5]), 5)


def test_q_matches_definition():
    direct = sorted({(1 << m) + k for m in range(13) for k in range(m)})
    assert list(Q.elements(1 << 12)) == [x for x in direct if x < 1 << 12]
    assert Q.first(10) == direct[:10]


def test_generator_streams_agree_with_membership():
    for g in (P, Q, squares()):
        assert list(g.elements(3000)) == members(g, 3000)


# --- shifts -------------------------------------------------------------------

def test_shift_examples():
    assert ns.same_set(ns.shift_left(EVENS, 1), ODDS)
    assert ns.shift_right(ns.finite([0, 1]), 3) == ns.finite([3, 4])
    q2 = ns.shift_left(Q, 2)
    assert all(q2.contains(1 << m) for m in range(3, 11))


@settings(max_examples=100)
@given(ep_sets, st.integers(0, 64))
def test_shift_round_trips(s, k):
    assert ns.same_set(ns.shift_left(ns.shift_right(s, k), k), s)
    assert ns.is_subset(ns.shift_right(ns.shift_left(s, k), k), s).is_true


@settings(max_examples=100)
@given(ep_sets, st.integers(0, 40))
def test_shifts_pointwise(s, k):
    t, p = params(s)
    n = t + 4 * p + k
    right, left = ns.shift_right(s, k), ns.shift_left(s, k)
    assert members(right, n) == [x for x in range(n) if x >= k and s.contains(x - k)]
    assert members(left, n) == [x for x in range(n) if s.contains(x + k)]


def test_generator_shift_wrappers():
    r, l = ns.shift_right(Q, 5), ns.shift_left(Q, 5)
    assert members(r, 600) == [x for x in range(600) if x >= 5 and Q.contains(x - 5)]
    assert list(l.elements(600)) == [x for x in range(600) if Q.contains(x + 5)]


# --- boolean operations ----------------------------------------------------

def test_boolean_examples():
    assert ns.same_set(ns.intersect(EVENS, ns.ap(0, 3)), ns.ap(0, 6))
    assert ns.same_set(ns.complement(ODDS), EVENS)
    below = ns.intersect(Q, ns.interval(0, 37))
    assert len(below) == 15
    assert list(below) == [2, 4, 5, 8, 9, 10, 16, 17, 18, 19, 32, 33, 34, 35, 36]


def test_complement_of_generator_raises():
    with pytest.raises(ComplementOfGeneratorTier):
        ns.complement(Q)
    with pytest.raises(TierError):
        ns.complement(P)


@settings(max_examples=150)
@given(ep_sets, ep_sets)
def test_boolean_pointwise(a, b):
    (t1, p1), (t2, p2) = params(a), params(b)
    n = t1 + t2 + 4 * math.lcm(p1, p2)
    i, u, d = ns.intersect(a, b), ns.union(a, b), ns.difference(a, b)
    for x in range(n):
        assert i.contains(x) == (a.contains(x) and b.contains(x))
        assert u.contains(x) == (a.contains(x) or b.contains(x))
        assert d.contains(x) == (a.contains(x) and not b.contains(x))
    c = ns.complement(a)
    assert all(c.contains(x) != a.contains(x) for x in range(n))


@settings(max_examples=100)
@given(ep_sets, ep_sets)
def test_result_period_divides_lcm(a, b):
    lcm = math.lcm(params(a)[1], params(b)[1])
    for r in (ns.intersect(a, b), ns.union(a, b)):
        assert lcm % params(r)[1] == 0


def test_mixed_tier_operations():
    i = ns.intersect(Q, EVENS)
    assert isinstance(i, ns.Generator)
    assert list(i.elements(300)) == [x for x in range(300) if Q.contains(x) and x % 2 == 0]
    u = ns.union(P, ns.finite([3]))
    assert list(u.elements(40)) == [1, 2, 3, 4, 8, 16, 32]
    f = ns.intersect(ns.finite([1, 2, 3, 4, 5]), Q)
    assert f == ns.finite([2, 4, 5])


# --- normal forms -------------------------------------------------------------

def test_normalize_examples():
    n = ns.normalize(ns.EventuallyPeriodic(0, 0, 4, 0b0101))
    assert (n.period, n.mask) == (2, 0b01)
    n = ns.normalize(ns.EventuallyPeriodic(1, 1, 1, 1))
    assert (n.threshold, n.period) == (0, 1)


@settings(max_examples=300)
@given(ep_sets)
def test_normalize_matches_brute_force(s):
    e = ns.as_periodic(s)
    assert (e.threshold, e.period) == oracle_normal_form(s)


@settings(max_examples=200)
@given(st.integers(0, 16), st.integers(0, 1 << 16), st.integers(1, 12), st.integers(0, 1 << 12))
def test_normalize_preserves_membership(t, trans, p, mask):
    raw = ns.EventuallyPeriodic(t, trans & B.ones(t), p, mask & B.ones(p))
    n = ns.normalize(raw)
    assert all(raw.contains(x) == n.contains(x) for x in range(t + 4 * p))


def test_normalize_random_masks_up_to_64():
    rng = random.Random(5)
    for _ in range(200):
        p = rng.randint(1, 64)
        base = rng.randint(1, p)
        unit = rng.getrandbits(base)
        bits = [B.get(unit, i % base) for i in range(p)] if p % base == 0 else [rng.random() < 0.5 for _ in range(p)]
        mask = B.from_positions(i for i, v in enumerate(bits) if v)
        n = ns.normalize(ns.EventuallyPeriodic(0, 0, p, mask))
        seq = [int(v) for v in bits] * 3
        expected = next(d for d in range(1, p + 1) if p % d == 0 and all(seq[i] == seq[i + d] for i in range(2 * p)))
        assert n.period == expected


def test_canonical_forms():
    assert ns.canonical(ns.per("101", "0")) == ns.finite([0, 2])
    assert ns.per("", "1") == ns.naturals()
    assert ns.same_set(ns.per("1", "01"), EVENS)
    assert ns.ap(3, 0) == ns.finite([3])


def test_residues():
    assert ns.residues(ns.ap(1, 3), 3) == frozenset({1})
    assert ns.residues(EVENS, 4) == frozenset({0, 2})
    assert ns.residues(ns.finite([1, 2]), 5) == frozenset()
    s = ns.per("0000", "1001")
    t, _ = params(s)
    assert ns.residues(s, 6) == frozenset(x % 6 for x in range(t, t + 200) if s.contains(x))


# --- windows and subsets --------------------------------------------------------

def test_window():
    w = ns.window(EVENS, 3, 10)
    assert w.elements() == [4, 6, 8] and w.count() == 3 and len(w) == 7
    assert 4 in w and 5 not in w and 12 not in w
    assert ns.window(Q, 30, 40).elements() == [32, 33, 34, 35, 36]


def test_is_subset_examples():
    assert ns.is_subset(ns.finite([0, 2]), EVENS).is_true
    assert ns.is_subset(ns.ap(0, 6), ns.ap(0, 3)).is_true
    v = ns.is_subset(ns.ap(0, 3), ns.ap(0, 6))
    assert v.is_false and v.witness == 3


@pytest.mark.parametrize("k", range(11))
def test_pow2_into_q_shift_matches_enumeration(k):
    shifted = ns.shift_left(Q, k)
    bad = [1 << m for m in range(21) if not Q.contains((1 << m) + k)]
    v = ns.is_subset(P, shifted)
    assert v.is_false and v.witness == bad[0]


@settings(max_examples=100)
@given(ep_sets, ep_sets, ep_sets)
def test_is_subset_transitive(a, b, c):
    if ns.is_subset(a, b).is_true and ns.is_subset(b, c).is_true:
        assert ns.is_subset(a, c).is_true


@settings(max_examples=150)
@given(ep_sets, ep_sets)
def test_is_subset_exact(a, b):
    (t1, p1), (t2, p2) = params(a), params(b)
    n = max(t1, t2) + 2 * math.lcm(p1, p2)
    truth = all(b.contains(x) for x in range(n) if a.contains(x))
    assert ns.is_subset(a, b).is_true == truth


def test_is_subset_generator_horizon():
    v = ns.is_subset(Q, ns.naturals())
    assert v.is_unknown and v.horizon == ns.DEFAULT_HORIZON
    assert ns.is_subset(Q, EVENS).is_false


def test_is_empty_and_first_element():
    assert ns.is_empty(ns.empty()).is_true
    assert ns.is_empty(ns.intersect(EVENS, ODDS)).is_true
    assert ns.first_element(ns.ap(7, 3)) == 7
    assert ns.first_element(Q) == 2


def test_describe_round_trips_decidable():
    from fe_lab.expr import parse_expr

    rng = random.Random(11)
    for _ in range(100):
        s = random_ep(rng)
        assert ns.same_set(parse_expr(ns.describe(s)), s)


# --- block forms ------------------------------------------------------------------

def test_block_forms_agree_with_membership():
    for g in (P, Q):
        f = g.blocks
        assert all(f.contains(x) == g.contains(x) for x in range(f.start, 1 << 12))


@pytest.mark.parametrize("k", [0, 1, 3, 7])
def test_derived_block_forms(k):
    cases = [ns.shift_left(Q, k), ns.shift_right(Q, k), ns.tail(P, 1 << k), ns.intersect(Q, ns.shift_left(Q, k))]
    for g in cases:
        f = g.blocks
        assert f is not None
        assert all(f.contains(x) == g.contains(x) for x in range(f.start, 1 << 12))


def test_block_form_validation():
    with pytest.raises(ValueError):
        BlockForm(-5, 0, 1, 0)
    assert BlockForm.make(-5, 0, 1).m0 == 3


def test_block_subset_proofs():
    v = ns.is_subset(ns.tail(P, 2), Q)
    assert v.is_true and v.witness["proof"] == "blocks"
    assert ns.is_subset(P, Q).witness == 1
    # Q is not eventually inside P
    assert ns.is_subset(Q, P).is_false
