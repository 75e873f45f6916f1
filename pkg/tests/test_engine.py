from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_instance
from matpart import (FreeMatroid, GraphicMatroid, InvalidArgument, Instance, Objective, Op,
                     Policy, UniformMatroid, brute_optimum, enumerate_feasible_partitions,
                     find_feasible_partition, is_feasible, min_sum_sum_partition,
                     redistribute_pinned, union_coverage)

PARALLEL3 = GraphicMatroid(2, [(0, 1)] * 3)
TRIANGLE = GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])
SUM_SUM = Objective(Op.SUM, Op.SUM)

seeds = st.integers(0, 10 ** 6)
small_n = st.integers(1, 7)
small_k = st.integers(1, 3)


def check_partition(matroids, parts, min_sizes):
    n = matroids[0].ground_size
    seen = set()
    for m, p, lo in zip(matroids, parts, min_sizes):
        assert not (p & seen)
        seen |= p
        assert m.is_independent(p)
        assert len(p) >= lo
    assert seen == set(range(n))


def test_parallel_edges_infeasible_with_witness():
    res = find_feasible_partition([PARALLEL3, PARALLEL3], [0, 0])
    assert not res
    assert res.witness == frozenset({0, 1, 2})


def test_triangle_two_nonempty_parts():
    res = find_feasible_partition([TRIANGLE, TRIANGLE], [1, 1])
    assert res
    check_partition([TRIANGLE] * 2, res.parts, [1, 1])


def test_free_two_nonempty_parts():
    res = find_feasible_partition([FreeMatroid(3)] * 2, [1, 1])
    assert res
    check_partition([FreeMatroid(3)] * 2, res.parts, [1, 1])


def test_more_parts_than_elements_cannot_all_be_nonempty():
    assert not find_feasible_partition([FreeMatroid(2)] * 3, [1, 1, 1])
    assert find_feasible_partition([FreeMatroid(2)] * 3, [0, 0, 0])


def test_min_sizes_validated():
    with pytest.raises(InvalidArgument):
        find_feasible_partition([FreeMatroid(2)] * 2, [2, 0])
    with pytest.raises(InvalidArgument):
        find_feasible_partition([FreeMatroid(2)] * 2, [1])


def test_min_sum_sum_examples():
    one = Instance.build([FreeMatroid(3)], [[1, 2, 3]])
    assert min_sum_sum_partition(one) == (6, (frozenset({0, 1, 2}),))
    two = Instance.build([FreeMatroid(3)] * 2, [[1, 2, 3], [3, 2, 1]])
    value, parts = min_sum_sum_partition(two, [0, 0])
    assert value == 4
    assert 0 in parts[0] and 2 in parts[1]
    same = Instance.build([UniformMatroid(4, 2)] * 2, [[1, 5, 2, 7]] * 2)
    assert min_sum_sum_partition(same, [1, 1])[0] == 15


def test_union_coverage_examples():
    assert union_coverage([PARALLEL3] * 2, [0, 1]) == 2
    assert union_coverage([PARALLEL3] * 2, []) == 0
    assert union_coverage([FreeMatroid(4)] * 3, [2]) == 4
    assert union_coverage([FreeMatroid(4)] * 3, [0, 1, 2]) == 4


def test_redistribute_whole_set_swap():
    parts = (frozenset({0, 1}), frozenset({2, 3}))
    assert redistribute_pinned(FreeMatroid(4), parts, [2, 0]) == (frozenset({2, 3}), frozenset({0, 1}))


def test_redistribute_pins_already_satisfied():
    parts = (frozenset({0, 1}), frozenset({2, 3}))
    assert redistribute_pinned(FreeMatroid(4), parts, [1, 3]) == parts


def test_redistribute_exchange_in_uniform():
    m = UniformMatroid(4, 2)
    out = redistribute_pinned(m, (frozenset({0, 1}), frozenset({2, 3})), [0, 1])
    assert 0 in out[0] and 1 in out[1]
    assert all(m.is_independent(p) for p in out)
    assert set().union(*out) == {0, 1, 2, 3}


# -- properties ---------------------------------------------------------------

@given(seeds, small_n, small_k, st.sampled_from([0, 1]))
def test_feasibility_matches_enumeration(seed, n, k, lo):
    inst = random_instance(seed, n, k)
    policy = Policy.FORBID if lo else Policy.ALLOW
    expected = next(enumerate_feasible_partitions(inst, policy), None) is not None
    res = find_feasible_partition(inst.matroids, [lo] * k)
    assert res.feasible == expected
    if res:
        check_partition(inst.matroids, res.parts, [lo] * k)
    elif res.witness is not None:
        s = res.witness
        assert len(s) > sum(m.rank_of(s) for m in inst.matroids)


@given(seeds, small_n, small_k)
def test_infeasible_without_min_sizes_always_has_witness(seed, n, k):
    inst = random_instance(seed, n, k)
    res = find_feasible_partition(inst.matroids)
    if not res:
        s = res.witness
        assert s is not None
        assert len(s) > sum(m.rank_of(s) for m in inst.matroids)


@given(seeds, small_n, small_k, st.sampled_from([0, 1]))
def test_min_sum_sum_matches_brute_force(seed, n, k, lo):
    inst = random_instance(seed, n, k)
    policy = Policy.FORBID if lo else Policy.ALLOW
    if next(enumerate_feasible_partitions(inst, policy), None) is None:
        return
    value, parts = min_sum_sum_partition(inst, [lo] * k)
    assert value == brute_optimum(inst, SUM_SUM, policy).value
    assert is_feasible(inst, parts, policy)
    assert sum(inst.weights[i][e] for i, p in enumerate(parts) for e in p) == value


@given(seeds, st.integers(2, 7), small_k)
def test_union_coverage_is_max_coverable(seed, n, k):
    inst = random_instance(seed, n, k)
    for r in range(k + 1):
        for subset in itertools.combinations(range(k), r):
            ms = [inst.matroids[i] for i in subset]
            best = 0
            if ms:
                for assignment in itertools.product(range(len(ms) + 1), repeat=n):
                    parts = [frozenset(e for e in range(n) if assignment[e] == j)
                             for j in range(len(ms))]
                    if all(m.is_independent(p) for m, p in zip(ms, parts)):
                        best = max(best, sum(map(len, parts)))
            assert union_coverage(inst.matroids, subset) == best


@given(seeds, st.integers(2, 7), st.integers(2, 3), st.data())
def test_redistribute_postconditions(seed, n, k, data):
    inst = random_instance(seed, n, k, identical_matroids=True)
    m = inst.matroids[0]
    res = find_feasible_partition(inst.matroids, [0] * k)
    if not res:
        return
    elems = [e for e in range(n) if not m.is_loop(e)]
    if len(elems) < k:
        return
    pins = data.draw(st.permutations(elems))[:k]
    out = redistribute_pinned(m, res.parts, pins)
    assert all(pins[i] in out[i] for i in range(k))
    check_partition([m] * k, out, [0] * k)


@given(st.integers(1, 6), st.integers(1, 3), st.data())
def test_redistribute_free_any_distinct_pins(n, k, data):
    if n < k:
        return
    m = FreeMatroid(n)
    assignment = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    parts = tuple(frozenset(e for e in range(n) if assignment[e] == i) for i in range(k))
    pins = data.draw(st.permutations(range(n)))[:k]
    out = redistribute_pinned(m, parts, pins)
    assert all(pins[i] in out[i] for i in range(k))
    check_partition([m] * k, out, [0] * k)


def test_min_cost_exact_rationals():
    inst = Instance.build([FreeMatroid(2)] * 2, [[Fraction(1, 3), Fraction(1, 2)],
                                                [Fraction(1, 2), Fraction(1, 3)]])
    value, _ = min_sum_sum_partition(inst, [1, 1])
    assert value == Fraction(2, 3)
