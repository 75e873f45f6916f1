"""Helpers shared by the solvers."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterable, Sequence

from ..engine import FeasibilityResult, find_feasible_partition
from ..errors import InfeasibleInstance
from ..instance import Instance, Policy
from ..matroid import Loopify, Matroid


def min_sizes_for(policy: Policy, k: int) -> list[int]:
    return [1 if policy is Policy.FORBID else 0] * k


class Probe:
    """Counts feasibility calls and candidates; remembers the start time."""

    def __init__(self):
        self.calls = 0
        self.candidates = 0
        self.start = time.perf_counter()

    def feasible(self, matroids: Sequence[Matroid], min_sizes: Sequence[int]) -> FeasibilityResult:
        self.calls += 1
        return find_feasible_partition(matroids, min_sizes)

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def below(weights: Sequence[Fraction], threshold) -> frozenset[int]:
    return frozenset(e for e, w in enumerate(weights) if w <= threshold)


def restrict(m: Matroid, allowed: Iterable[int]) -> Matroid:
    allowed = frozenset(allowed)
    return m if len(allowed) == m.ground_size else Loopify(m, allowed)


def require_feasible(instance: Instance, policy: Policy, probe: Probe | None = None) -> FeasibilityResult:
    probe = probe or Probe()
    res = probe.feasible(instance.matroids, min_sizes_for(policy, instance.k))
    if not res:
        raise InfeasibleInstance(res.reason or "no feasible partition exists")
    return res


def distinct(values: Iterable[Fraction]) -> list[Fraction]:
    return sorted(set(values))
