from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import subsets
from matpart import (DirectSum, FreeMatroid, GraphicMatroid, InvalidArgument, Matroid,
                     ParseError, PartitionMatroid, UniformMatroid, contract, delete,
                     direct_sum, from_descriptor, is_independent, loopify, rank_of, truncate,
                     verify_axioms)
from matpart.matroid import MAX_AXIOM_GROUND
from matpart.reductions.generators import FAMILIES, random_matroid
from matpart.errors import Unsupported

TRIANGLE = GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])


def same_on_all_subsets(a: Matroid, b: Matroid) -> bool:
    return a.ground_size == b.ground_size and all(
        a.is_independent(s) == b.is_independent(s) for s in subsets(a.ground_size))


class BrokenSingletons(Matroid):
    """Independent iff the size is not 1: breaks heredity."""

    def __init__(self, n):
        super().__init__(n)

    def _independent(self, s):
        return len(s) != 1

    def descriptor(self):
        return {"type": "broken"}


def matroid_strategy(max_n=8):
    @st.composite
    def build(draw):
        import random
        n = draw(st.integers(1, max_n))
        family = draw(st.sampled_from(FAMILIES))
        seed = draw(st.integers(0, 10 ** 6))
        return random_matroid(random.Random(seed), n, family)
    return build()


# -- oracles ------------------------------------------------------------------

def test_uniform_independence():
    u = UniformMatroid(3, 2)
    assert is_independent(u, {0, 1})
    assert not is_independent(u, {0, 1, 2})


def test_graphic_triangle_cycle_dependent():
    assert not is_independent(TRIANGLE, {0, 1, 2})
    assert is_independent(TRIANGLE, {0, 1})


def test_rank_examples():
    assert rank_of(TRIANGLE, set()) == 0
    assert rank_of(UniformMatroid(4, 2), set()) == 0
    assert rank_of(TRIANGLE, {0, 1, 2}) == 2
    assert rank_of(PartitionMatroid([[0, 1], [2]], [1, 1]), {0, 1, 2}) == 2


def test_out_of_range_element_rejected():
    with pytest.raises(InvalidArgument):
        FreeMatroid(3).is_independent({3})


def test_loopify_examples():
    m = loopify(FreeMatroid(3), {0, 2})
    assert not m.is_independent({1})
    assert m.is_independent({0, 2})
    assert same_on_all_subsets(loopify(UniformMatroid(3, 2), {0, 1, 2}), UniformMatroid(3, 2))


def test_delete_examples():
    assert same_on_all_subsets(delete(FreeMatroid(3), {1}), FreeMatroid(2))
    path = delete(TRIANGLE, {2})
    assert path.ground_size == 2
    assert all(path.is_independent(s) for s in subsets(2))
    assert same_on_all_subsets(delete(TRIANGLE, set()), TRIANGLE)


def test_contract_examples():
    c = contract(TRIANGLE, {0})
    # elements 1, 2 of the triangle become 0, 1 after contraction
    assert c.is_independent({0})
    assert not c.is_independent({0, 1})
    assert same_on_all_subsets(contract(TRIANGLE, set()), TRIANGLE)


def test_truncate_examples():
    assert same_on_all_subsets(truncate(FreeMatroid(3), 2), UniformMatroid(3, 2))
    assert same_on_all_subsets(truncate(UniformMatroid(3, 2), 3), UniformMatroid(3, 2))
    t = truncate(TRIANGLE, 1)
    assert [s for s in subsets(3) if t.is_independent(s)] == [frozenset(), *map(frozenset, [[0], [1], [2]])]


def test_direct_sum_examples():
    s = direct_sum([FreeMatroid(2), UniformMatroid(2, 1)])
    assert s.is_independent({0, 1, 2})
    assert not s.is_independent({0, 2, 3})
    assert same_on_all_subsets(direct_sum([TRIANGLE]), TRIANGLE)


def test_direct_sum_rejects_non_contiguous_offsets():
    with pytest.raises(InvalidArgument):
        direct_sum([FreeMatroid(2), FreeMatroid(2)], offsets=[0, 1])


def test_verify_axioms_examples():
    assert verify_axioms(UniformMatroid(4, 2)).ok
    assert verify_axioms(from_descriptor({"type": "graphic", "vertices": 3,
                                          "edges": [[0, 1], [1, 2], [0, 2]]}, 3)).ok
    report = verify_axioms(BrokenSingletons(3))
    assert not report.ok
    axiom, witness = report.violations[0]
    assert axiom == "I2"
    small, big = witness
    assert small <= big and len(small) == 1


def test_verify_axioms_ground_cap():
    with pytest.raises(Unsupported):
        verify_axioms(FreeMatroid(MAX_AXIOM_GROUND + 1))


# -- descriptors --------------------------------------------------------------

DESCRIPTORS = [
    ({"type": "free"}, 4),
    ({"type": "uniform", "rank": 2}, 4),
    ({"type": "partition", "classes": [[0, 1], [2, 3]], "capacities": [1, 2]}, 4),
    ({"type": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2], [0, 1]]}, 4),
    ({"type": "truncation", "limit": 2, "inner": {"type": "free"}}, 4),
    ({"type": "loopify", "allowed": [0, 2], "inner": {"type": "uniform", "rank": 1}}, 4),
]


@pytest.mark.parametrize("desc,n", DESCRIPTORS)
def test_descriptor_round_trip(desc, n):
    m = from_descriptor(desc, n)
    again = from_descriptor(m.descriptor(), n)
    assert again == m
    assert same_on_all_subsets(m, again)
    assert verify_axioms(m).ok


def test_minor_descriptors_round_trip():
    for m in (delete(TRIANGLE, {1}), contract(TRIANGLE, {0}),
              DirectSum([FreeMatroid(1), UniformMatroid(2, 1)])):
        again = from_descriptor(m.descriptor(), m.ground_size)
        assert same_on_all_subsets(m, again)


def test_descriptor_errors_carry_pointer():
    with pytest.raises(ParseError) as err:
        from_descriptor({"type": "uniform"}, 3, "/matroids/1")
    assert err.value.pointer.startswith("/matroids/1")
    with pytest.raises(ParseError):
        from_descriptor({"type": "nope"}, 3)
    with pytest.raises(ParseError):
        from_descriptor({"type": "partition", "classes": [[0, 1]], "capacities": [1]}, 3)


# -- properties ---------------------------------------------------------------

@given(matroid_strategy())
def test_shipped_families_satisfy_axioms(m):
    assert verify_axioms(m).ok


@given(matroid_strategy(), st.data())
def test_rank_monotone_and_submodular(m, data):
    n = m.ground_size
    elems = st.frozensets(st.integers(0, n - 1))
    s, t = data.draw(elems), data.draw(elems)
    assert rank_of(m, s & t) <= rank_of(m, s) <= rank_of(m, s | t)
    assert rank_of(m, s) + rank_of(m, t) >= rank_of(m, s | t) + rank_of(m, s & t)


@given(matroid_strategy(), st.integers(0, 9))
def test_truncation_rank(m, limit):
    assert rank_of(truncate(m, limit)) == min(limit, rank_of(m))


@given(matroid_strategy(), st.data())
def test_contraction_rank(m, data):
    a = data.draw(st.frozensets(st.integers(0, m.ground_size - 1)))
    c = contract(m, a)
    assert rank_of(c) == rank_of(m) - rank_of(m, a)
    # rank formula for every set in the contracted ground set
    rest = sorted(set(range(m.ground_size)) - a)
    for x in subsets(len(rest)):
        old = {rest[i] for i in x}
        assert c.is_independent(x) == (rank_of(m, old | a) - rank_of(m, a) == len(x))


@given(matroid_strategy(), st.data())
def test_deletion_matches_restriction(m, data):
    removed = data.draw(st.frozensets(st.integers(0, m.ground_size - 1)))
    d = delete(m, removed)
    r = loopify(m, set(range(m.ground_size)) - removed)
    for x in subsets(d.ground_size):
        assert d.is_independent(x) == r.is_independent(d.index_map.to_old(x))


def test_basis_is_maximal():
    for m in (TRIANGLE, UniformMatroid(5, 3), PartitionMatroid([[0, 1, 2], [3]], [2, 0])):
        b = m.basis_of()
        assert m.is_independent(b) and len(b) == m.rank
        for e in set(range(m.ground_size)) - b:
            assert not m.is_independent(b | {e})


def test_partition_matroid_zero_capacity_class_is_loops():
    m = PartitionMatroid([[0, 1], [2]], [1, 0])
    assert m.is_loop(2) and not m.is_loop(0)


def test_equal_descriptors_compare_equal():
    assert UniformMatroid(3, 2) == UniformMatroid(3, 2)
    assert UniformMatroid(3, 2) != UniformMatroid(3, 1)
    assert len({FreeMatroid(3), FreeMatroid(3)}) == 1


def test_triangle_exhaustive_independence_table():
    independent = [s for s in subsets(3) if TRIANGLE.is_independent(s)]
    assert len(independent) == 7
    assert frozenset({0, 1, 2}) not in independent


def test_graphic_parallel_edges_and_self_loop():
    m = GraphicMatroid(2, [(0, 1), (0, 1), (1, 1)])
    assert m.is_loop(2)
    assert not m.is_independent({0, 1})
    assert rank_of(m) == 1
