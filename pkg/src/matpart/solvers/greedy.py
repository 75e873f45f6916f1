"""Exact greedy for (sum, max) on identical partition matroids with tight classes."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidArgument, Unsupported
from ..instance import Instance, Objective, Op, Policy, SolveReport, evaluate
from ..matroid import PartitionMatroid

SUM_MAX = Objective(Op.SUM, Op.MAX)


def greedy_parts(m: PartitionMatroid, weights: Sequence, k: int) -> tuple[frozenset[int], ...]:
    """Round ``j`` takes the ``η_c`` heaviest remaining elements of every class ``c``.

    Requires ``|S_c| = η_c · k`` for every class; ties go to the smaller index.
    """
    if k < 1:
        raise InvalidArgument("k must be positive")
    for cls, cap in zip(m.classes, m.capacities):
        if len(cls) != cap * k:
            raise InvalidArgument(f"class of size {len(cls)} is not {cap} x {k}")
    ws = [Fraction(x) for x in weights]
    parts: list[set[int]] = [set() for _ in range(k)]
    for cls, cap in zip(m.classes, m.capacities):
        order = sorted(cls, key=lambda e: (-ws[e], e))
        for j in range(k):
            parts[j].update(order[j * cap:(j + 1) * cap])
    return tuple(frozenset(p) for p in parts)


def greedy_partition_matroid_sum_max(m: PartitionMatroid, weights: Sequence, k: int,
                                     policy: Policy = Policy.FORBID) -> SolveReport:
    start = time.perf_counter()
    parts = greedy_parts(m, weights, k)
    instance = Instance.build([m] * k, [list(weights)] * k)
    value = evaluate(instance, SUM_MAX, parts, policy)
    return SolveReport(value, parts, "greedy", SUM_MAX, policy, candidates=1,
                       wall_time=time.perf_counter() - start)


def greedy_applies(instance: Instance) -> bool:
    m = instance.matroids[0]
    return (instance.identical_matroids and instance.identical_weights
            and isinstance(m, PartitionMatroid)
            and all(len(c) == cap * instance.k for c, cap in zip(m.classes, m.capacities)))


def solve_greedy(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    if not greedy_applies(instance):
        raise Unsupported("greedy needs identical weights and one partition matroid "
                          "whose class sizes are capacity times k")
    rep = greedy_partition_matroid_sum_max(instance.matroids[0], instance.weights[0],
                                           instance.k, policy)
    return rep
