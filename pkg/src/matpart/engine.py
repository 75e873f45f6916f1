"""Matroid partitioning: feasibility, minimum-weight partitions and pinned redistribution.

Feasibility grows a partial partition one element at a time along shortest
augmenting paths in the exchange graph.  Parts only ever gain elements along
a path, so a partial partition that already has one element per required part
stays valid; seeding it with a system of distinct representatives makes the
nonempty version exact as well.

Weighted partitioning is minimum-cost matroid intersection on the copies
``(e, i)``: one matroid allows at most one copy per element, the other is the
direct sum of the part matroids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AxiomViolation, InfeasibleInstance, InvalidArgument
from .instance import Instance, Partition
from .matching import has_right_perfect_matching
from .matroid import Matroid, Truncation


@dataclass
class FeasibilityResult:
    """``parts`` when feasible; otherwise ``witness`` and/or a human ``reason``.

    A witness ``S`` always satisfies ``|S| > sum_i rank_i(S)``.
    """

    feasible: bool
    parts: Partition | None = None
    witness: frozenset[int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.feasible


def _check_min_sizes(k: int, min_sizes: Sequence[int] | None) -> list[int]:
    if min_sizes is None:
        return [0] * k
    ms = list(min_sizes)
    if len(ms) != k or any(m not in (0, 1) for m in ms):
        raise InvalidArgument("min_sizes must be k entries, each 0 or 1")
    return ms


class _Partitioner:
    """Mutable partial partition with shortest-path augmentation."""

    def __init__(self, matroids: Sequence[Matroid], active: Sequence[int]):
        self.ms = list(matroids)
        self.active = sorted(active)
        self.parts: list[set[int]] = [set() for _ in self.ms]
        self.owner: dict[int, int] = {}

    def seed(self, e: int, i: int) -> None:
        self.parts[i].add(e)
        self.owner[e] = i

    def insert(self, y: int) -> frozenset[int] | None:
        """Add ``y``; on failure return the set of elements reachable from it."""
        parent: dict[int, int | None] = {y: None}
        queue = deque([y])
        while queue:
            x = queue.popleft()
            home = self.owner.get(x)
            for i in self.active:
                if i == home:
                    continue
                part = self.parts[i]
                if self.ms[i]._test(frozenset(part | {x})):
                    self._apply(parent, x, i)
                    return None
                for z in sorted(part):
                    if z in parent:
                        continue
                    if self.ms[i]._test(frozenset((part - {z}) | {x})):
                        parent[z] = x
                        queue.append(z)
        return frozenset(parent)

    def _apply(self, parent: dict, last: int, sink: int) -> None:
        # ``last`` moves into ``sink``; each predecessor takes the place of
        # the element it displaced.
        target = sink
        x: int | None = last
        while x is not None:
            old = self.owner.get(x)
            if old is not None:
                self.parts[old].discard(x)
            self.parts[target].add(x)
            self.owner[x] = target
            if old is None:
                break
            target = old
            x = parent[x]

    def result(self) -> Partition:
        return tuple(frozenset(p) for p in self.parts)


def _representatives(matroids: Sequence[Matroid], need: list[int], n: int
                     ) -> dict[int, int] | None:
    edges = [(e, idx) for idx, i in enumerate(need) for e in range(n)
             if matroids[i]._test(frozenset((e,)))]
    ok, match = has_right_perfect_matching(edges, len(need))
    if not ok:
        return None
    return {need[idx]: e for idx, e in match.items()}


def find_feasible_partition(matroids: Sequence[Matroid],
                            min_sizes: Sequence[int] | None = None) -> FeasibilityResult:
    """Partition ``[0, n)`` into sets independent in the respective matroids.

    ``min_sizes[i] == 1`` additionally demands that part ``i`` be nonempty.
    The answer is exact in both cases.
    """
    if not matroids:
        raise InvalidArgument("at least one matroid is required")
    n = matroids[0].ground_size
    if any(m.ground_size != n for m in matroids):
        raise InvalidArgument("all matroids must share one ground set")
    k = len(matroids)
    mins = _check_min_sizes(k, min_sizes)
    engine = _Partitioner(matroids, range(k))
    need = [i for i in range(k) if mins[i]]
    if need:
        reps = _representatives(matroids, need, n)
        if reps is None:
            return FeasibilityResult(False, reason=(
                "the parts that must be nonempty have no system of distinct "
                "non-loop representatives"))
        for i, e in reps.items():
            engine.seed(e, i)
    for y in range(n):
        if y in engine.owner:
            continue
        stuck = engine.insert(y)
        if stuck is not None:
            return FeasibilityResult(False, witness=stuck, reason=(
                f"{len(stuck)} elements exceed the sum of their ranks"))
    return FeasibilityResult(True, parts=engine.result())


def union_coverage(matroids: Sequence[Matroid], subset: Sequence[int]) -> int:
    """Largest number of elements that the parts in ``subset`` can jointly hold."""
    if not subset:
        return 0
    engine = _Partitioner(matroids, subset)
    return sum(1 for y in range(matroids[0].ground_size) if engine.insert(y) is None)


# -- weighted partitioning ----------------------------------------------------

def _min_cost_cover(matroids: Sequence[Matroid], weights: Sequence[Sequence[Fraction]]
                    ) -> tuple[Fraction, Partition] | None:
    """Cheapest partition of the ground set with part ``i`` independent in ``matroids[i]``.

    Successive shortest augmenting paths for weighted matroid intersection,
    with vertex lengths ``c`` outside and ``-c`` inside the current set and
    Bellman-Ford ordered by (length, arc count).
    """
    k = len(matroids)
    n = matroids[0].ground_size
    copies = [(e, i) for e in range(n) for i in range(k) if matroids[i]._test(frozenset((e,)))]
    cost = {c: Fraction(weights[c[1]][c[0]]) for c in copies}
    parts: list[set[int]] = [set() for _ in range(k)]
    chosen: dict[int, int] = {}  # element -> part
    for _ in range(n):
        in_y = [c for c in copies if chosen.get(c[0]) == c[1]]
        out_y = [c for c in copies if chosen.get(c[0]) != c[1]]
        sources = [x for x in out_y if x[0] not in chosen]
        sinks = {x for x in out_y if matroids[x[1]]._test(frozenset(parts[x[1]] | {x[0]}))}
        arcs: dict[tuple, list[tuple]] = {c: [] for c in copies}
        for y in in_y:
            for x in out_y:
                # Y - y + x keeps one copy per element
                if x[0] not in chosen or x[0] == y[0]:
                    arcs[y].append(x)
                # Y - y + x stays independent in the direct sum
                if x in sinks or (x[1] == y[1] and matroids[x[1]]._test(
                        frozenset((parts[x[1]] - {y[0]}) | {x[0]}))):
                    arcs[x].append(y)

        def length(c):
            return -cost[c] if chosen.get(c[0]) == c[1] else cost[c]

        dist: dict[tuple, tuple[Fraction, int]] = {x: (length(x), 0) for x in sources}
        prev: dict[tuple, tuple | None] = {x: None for x in sources}
        for _round in range(len(copies)):
            changed = False
            for u in copies:
                if u not in dist:
                    continue
                du, hu = dist[u]
                for v in arcs[u]:
                    cand = (du + length(v), hu + 1)
                    if v not in dist or cand < dist[v]:
                        dist[v] = cand
                        prev[v] = u
                        changed = True
            if not changed:
                break
        reached = [x for x in copies if x in sinks and x in dist]
        if not reached:
            return None
        end = min(reached, key=lambda x: dist[x])
        path = []
        node: tuple | None = end
        while node is not None:
            path.append(node)
            node = prev[node]
        leaving = [c for c in path if chosen.get(c[0]) == c[1]]
        entering = [c for c in path if chosen.get(c[0]) != c[1]]
        for e, i in leaving:
            parts[i].discard(e)
            del chosen[e]
        for e, i in entering:
            parts[i].add(e)
            chosen[e] = i
    total = sum((Fraction(weights[i][e]) for e, i in chosen.items()), Fraction(0))
    return total, tuple(frozenset(p) for p in parts)


def min_cost_partition(matroids: Sequence[Matroid], weights: Sequence[Sequence],
                       min_sizes: Sequence[int] | None = None) -> tuple[Fraction, Partition]:
    """Minimum total weight partition, optionally with nonempty parts.

    With lower bounds the cost of the best partition with prescribed part
    sizes is an M-convex function of the size vector, so a steepest-descent
    walk over single-unit transfers between parts reaches the optimum.
    """
    k = len(matroids)
    mins = _check_min_sizes(k, min_sizes)
    free = _min_cost_cover(matroids, weights)
    if free is None:
        raise InfeasibleInstance("no feasible partition exists")
    if all(len(p) >= m for p, m in zip(free[1], mins)):
        return free
    start = find_feasible_partition(matroids, mins)
    if not start:
        raise InfeasibleInstance(start.reason or "no feasible partition with nonempty parts")
    sizes = [len(p) for p in start.parts]
    memo: dict[tuple[int, ...], tuple[Fraction, Partition] | None] = {}

    def best_with(sz: tuple[int, ...]):
        if sz not in memo:
            memo[sz] = _min_cost_cover([Truncation(m, s) for m, s in zip(matroids, sz)], weights)
        return memo[sz]

    current = tuple(sizes)
    best = best_with(current)
    while True:
        step = None
        for i in range(k):
            if current[i] <= mins[i]:
                continue
            for j in range(k):
                if j == i:
                    continue
                nxt = list(current)
                nxt[i] -= 1
                nxt[j] += 1
                res = best_with(tuple(nxt))
                if res is not None and res[0] < (step or best)[0]:
                    step = res
                    step_sizes = tuple(nxt)
        if step is None:
            return best
        best, current = step, step_sizes


def min_sum_sum_partition(instance: Instance, min_sizes: Sequence[int] | None = None
                          ) -> tuple[Fraction, Partition]:
    return min_cost_partition(instance.matroids, instance.weights, min_sizes)


# -- pinned redistribution ----------------------------------------------------

def redistribute_pinned(m: Matroid, parts: Sequence, pins: Sequence[int]) -> Partition:
    """Rearrange a partition into sets independent in ``m`` so that ``pins[i]`` is in part ``i``.

    Parts are fixed left to right.  A pin sitting in a later part is fixed by
    swapping the two whole parts; one sitting in an already fixed part ``l``
    is moved by a symmetric exchange ``I_l - e + f`` / ``I_j - f + e``, or a
    plain move when ``I_j + e`` is already independent.
    """
    cur = [set(p) for p in parts]
    k = len(cur)
    if len(pins) != k or len(set(pins)) != k:
        raise InvalidArgument("need one distinct pin per part")
    where = {e: i for i, p in enumerate(cur) for e in p}
    if any(e not in where for e in pins):
        raise InvalidArgument("pins must be elements of the partition")
    for j, e in enumerate(pins):
        loc = next(i for i, p in enumerate(cur) if e in p)
        if loc == j:
            continue
        if loc > j:
            cur[j], cur[loc] = cur[loc], cur[j]
            continue
        src, dst = cur[loc], cur[j]
        for f in sorted(dst):
            a = (src - {e}) | {f}
            b = (dst - {f}) | {e}
            if m._test(frozenset(a)) and m._test(frozenset(b)):
                cur[loc], cur[j] = a, b
                break
        else:
            if not m._test(frozenset(dst | {e})):
                raise AxiomViolation(f"no exchange moves pin {e} into part {j}")
            cur[loc], cur[j] = src - {e}, dst | {e}
    return tuple(frozenset(p) for p in cur)
