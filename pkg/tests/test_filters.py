import random

import pytest

from fe_lab import natset as ns
from fe_lab.corpus import pow2, qset
from fe_lab.errors import FipViolation
from fe_lab.filters import (FilterBase, ParametricBase, coloring_pieces, filter_fe, filter_member,
                            filter_sum_member, fip_check, left_sum_property, leftward_shift_member,
                            regularity_experiment, urich_check)
from fe_lab.generate import random_finite_base_sets
from oracles import random_ep

EVENS, ODDS = ns.ap(0, 2), ns.ap(1, 2)
MULT3, MULT4, MULT6 = ns.ap(0, 3), ns.ap(0, 4), ns.ap(0, 6)
N = ns.naturals()
P, Q = pow2(), qset()


def base(*sets):
    return FilterBase(tuple(sets))


def tails_p():
    return ParametricBase("tails", P, 64)


# --- FIP ---------------------------------------------------------------------------

def test_fip_examples():
    v = fip_check(base(EVENS, MULT3))
    assert v.is_true and v.witness == 0
    assert fip_check(base(EVENS, ODDS)).is_false
    v = fip_check(ParametricBase("shiftsdown", Q, 5))
    assert v.is_true and v.witness == 64
    assert all(Q.contains(64 + k) for k in range(6))


def test_fip_generator_members():
    b = base(Q, ns.per("", "0001"))
    assert b.fip.is_true and b.fip.witness == 19
    b = base(P, ns.ap(3, 4))
    assert b.fip.is_unknown and "FIP unverified" in b.fip.note


def test_operations_refuse_bases_without_fip():
    with pytest.raises(FipViolation):
        filter_member(base(EVENS, ODDS), N)
    with pytest.raises(FipViolation):
        ParametricBase("tails", ns.finite([1, 2]), 5)
    with pytest.raises(FipViolation):
        ParametricBase("shiftsdown", EVENS, 1)


# --- membership ----------------------------------------------------------------------

def test_member_examples():
    assert filter_member(base(EVENS), N).is_true
    v = filter_member(base(EVENS), MULT4)
    assert v.is_false and v.witness == 2


def test_tails_of_pow2_member_q_minus_3():
    v = filter_member(tails_p(), ns.shift_left(Q, 3))
    assert v.is_true
    n = v.witness["n"]
    assert n == 9 and v.witness["first_element"] == 16
    # every later power of two is in Q - 3; the ones below n are not all
    assert all(Q.contains((1 << m) + 3) for m in range(4, 41))
    assert not Q.contains(8 + 3)


def test_finite_base_member_is_one_subset_test():
    rng = random.Random(4)
    for _ in range(150):
        gens = random_finite_base_sets(rng, count=2)
        b = FilterBase(tuple(gens))
        x = random_ep(rng, 6, 6)
        assert filter_member(b, x).truth == ns.is_subset(ns.intersect(gens[0], gens[1]), x).truth


def test_member_monotone():
    rng = random.Random(5)
    for _ in range(150):
        b = FilterBase(tuple(random_finite_base_sets(rng, count=2)))
        x, y = random_ep(rng, 6, 6), random_ep(rng, 6, 6)
        if filter_member(b, x).is_true:
            assert filter_member(b, ns.union(x, y)).is_true


def test_parametric_decidable_members():
    t = ParametricBase("tails", MULT3, 10)
    assert filter_member(t, ns.union(MULT6, ns.ap(3, 6))).is_true
    v = filter_member(t, ns.union(MULT6, ns.finite([3, 9])))
    assert v.is_false
    v = filter_member(t, ns.difference(N, ns.finite([3, 9, 15])))
    assert v.is_true and v.witness["n"] == 16
    # runs of three: G_1 = {0, 1 mod 4}, G_2 = {0 mod 4}, G_3 is empty
    with pytest.raises(FipViolation):
        ParametricBase("shiftsdown", ns.per("", "1110"), 3)
    s = ParametricBase("shiftsdown", ns.per("", "1110"), 1)
    assert s.finite_chain and list(s.indices()[0]) == [0, 1]
    assert filter_member(s, ns.per("", "1100")).witness == {"n": 1}
    assert filter_member(s, ns.per("", "1000")).is_false
    thick = ParametricBase("shiftsdown", ns.per("0101", "1"), 2)
    # S = {1, 3, 4, 5, ...}; G_1 = {3, 4, ...} is the first member inside X
    v = filter_member(thick, ns.per("000", "1"))
    assert v.is_true and v.witness["n"] == 1
    assert filter_member(thick, ns.per("0000", "1")).is_false


def test_finite_source_chain_stops_at_cap():
    t = ParametricBase("tails", ns.finite([1, 5, 9]), 6)
    assert filter_member(t, ns.finite([9])).is_true
    assert filter_member(t, ns.finite([5])).is_false


def test_leftward_shift_examples():
    assert leftward_shift_member(EVENS, base(EVENS), 2).is_true
    assert leftward_shift_member(EVENS, base(EVENS), 1).is_false
    for k in range(33):
        v = leftward_shift_member(Q, tails_p(), k)
        assert v.is_true
        n = v.witness["n"]
        assert all(Q.contains((1 << m) + k) for m in range(40) if (1 << m) >= n)


# --- sums ------------------------------------------------------------------------------

def test_sum_examples():
    assert filter_sum_member(N, base(EVENS), base(ODDS)).is_true
    assert filter_sum_member(EVENS, base(EVENS), base(EVENS)).is_true
    assert filter_sum_member(EVENS, base(ODDS), base(EVENS)).is_false


def test_sum_q_over_tails_of_pow2():
    rng = random.Random(6)
    for _ in range(5):
        u = FilterBase(tuple(random_finite_base_sets(rng)))
        v = filter_sum_member(Q, u, tails_p())
        assert v.is_true and v.witness["all_k_from"] == 0


def test_sum_unknown_without_symbolic_argument():
    v = filter_sum_member(Q, base(EVENS), ParametricBase("shiftsdown", Q, 2), horizon=6)
    assert v.truth is not ns.Truth.FALSE


def test_sum_implies_rich_on_decidable_instances():
    rng = random.Random(7)
    hits = 0
    for _ in range(120):
        u = FilterBase(tuple(random_finite_base_sets(rng, count=2, max_t=4, max_p=4)))
        v = FilterBase(tuple(random_finite_base_sets(rng, count=2, max_t=4, max_p=4)))
        x = random_ep(rng, 6, 6)
        if filter_sum_member(x, u, v).is_true:
            hits += 1
            assert urich_check(u, x).status.is_true
    assert hits > 5


# --- richness and filter fe --------------------------------------------------------

def test_rich_examples():
    r = urich_check(base(EVENS), ODDS)
    assert r.status.is_true and r.certificate == {"type": "closure_shift", "k": 1}
    assert urich_check(base(ns.finite([0, 1])), EVENS).status.is_false
    r = urich_check(tails_p(), Q)
    assert r.status.is_true and r.index == 2 and r.certificate == {"type": "uniform_shift", "k": 0}


def test_rich_generator_unknown():
    # no tail of the squares is shown to embed in P, and P is never refuted
    r = urich_check(ParametricBase("tails", ns.union(P, ns.finite([3])), 2), P, n_max=8, k_max=1 << 10)
    assert r.status.is_unknown and r.status.note == "verified to index_cap"


def test_filter_fe_examples():
    assert filter_fe(base(EVENS), base(N)).is_true
    assert filter_fe(base(ns.finite([0, 1])), base(EVENS)).is_false
    # {0,2} + k needs k and k + 2 both 0 mod 4
    assert filter_fe(base(EVENS), base(MULT4)).is_false
    assert filter_fe(base(EVENS), ParametricBase("tails", MULT4, 8)).is_false
    assert filter_fe(base(MULT4), ParametricBase("tails", EVENS, 8)).is_true


# --- whole translates ----------------------------------------------------------------

def test_left_sum_examples():
    (e,) = left_sum_property(base(EVENS), [ODDS])
    assert e.holds.is_true and e.k == 1 and e.crosscheck.is_true
    (e,) = left_sum_property(base(MULT3), [MULT6])
    assert e.holds.is_false
    (e,) = left_sum_property(tails_p(), [Q])
    assert e.holds.is_true and e.crosscheck.is_true


def test_left_sum_crosscheck_random():
    rng = random.Random(8)
    for _ in range(100):
        v = FilterBase(tuple(random_finite_base_sets(rng, count=2)))
        b = random_ep(rng, 6, 6)
        (e,) = left_sum_property(v, [b])
        if e.holds.is_true:
            assert e.crosscheck.is_true


# --- regularity -------------------------------------------------------------------------

def test_regularity_examples():
    r = regularity_experiment(base(ns.finite([0, 1])), N, "parity")
    assert r.base_rich.status.is_true and r.rich_pieces == [] and r.gap.is_true
    r = regularity_experiment(base(EVENS), N, "parity")
    assert "color 0" in r.rich_pieces and r.gap.is_false
    r = regularity_experiment(base(N), N, "mod:2")
    assert r.gap.is_true


def test_colorings():
    pieces = coloring_pieces(N, "blocks:2:3")
    assert [p.window_bits(0, 6) for _, p in pieces] == [0b000011, 0b001100, 0b110000]
    with pytest.raises(ValueError):
        coloring_pieces(N, "mod:5")
    with pytest.raises(ValueError):
        coloring_pieces(N, "stripes")
