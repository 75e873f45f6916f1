"""Brute-force referee.

Deliberately naive: it enumerates assignments of elements to parts in
lexicographic order and is the ground truth for every solver test.
"""

from __future__ import annotations

import itertools
import os
import time
from typing import Iterator

from .errors import BudgetExceeded, InfeasibleInstance, InvalidArgument
from .instance import Instance, Objective, Partition, Policy, SolveReport, better, evaluate

DEFAULT_BUDGET = 20_000_000


def default_budget() -> int:
    raw = os.environ.get("MATPART_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidArgument(f"MATPART_BUDGET must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidArgument("MATPART_BUDGET must be positive")
    return value


def check_budget(instance: Instance, budget: int | None = None) -> int:
    budget = default_budget() if budget is None else budget
    size = instance.k ** instance.n
    if size > budget:
        raise BudgetExceeded(f"{instance.k}^{instance.n} = {size} assignments exceed the budget of {budget}")
    return budget


def enumerate_feasible_partitions(instance: Instance, policy: Policy = Policy.FORBID,
                                  budget: int | None = None) -> Iterator[Partition]:
    """Yield every feasible partition once, in lexicographic order of the assignment vector.

    Elements are assigned in index order; a prefix is abandoned as soon as a
    part becomes dependent (sound by heredity) or, under FORBID, too few
    elements remain to fill the empty parts.
    """
    check_budget(instance, budget)
    n, k = instance.n, instance.k
    ms = instance.matroids
    parts: list[frozenset[int]] = [frozenset()] * k
    forbid = policy is Policy.FORBID

    def rec(e: int) -> Iterator[Partition]:
        if forbid and sum(1 for p in parts if not p) > n - e:
            return
        if e == n:
            yield tuple(parts)
            return
        for i in range(k):
            grown = parts[i] | {e}
            if not ms[i]._test(grown):
                continue
            old = parts[i]
            parts[i] = grown
            yield from rec(e + 1)
            parts[i] = old

    yield from rec(0)


def brute_optimum(instance: Instance, objective: Objective, policy: Policy = Policy.FORBID,
                  budget: int | None = None) -> SolveReport:
    """Exact optimum by full enumeration; the first optimum found is the witness."""
    start = time.perf_counter()
    best_value = None
    best_parts = None
    count = 0
    for parts in enumerate_feasible_partitions(instance, policy, budget):
        count += 1
        value = evaluate(instance, objective, parts, policy)
        if better(objective.sense, value, best_value):
            best_value, best_parts = value, parts
    if best_parts is None:
        raise InfeasibleInstance("no feasible partition exists")
    return SolveReport(best_value, best_parts, "brute", objective, policy, candidates=count,
                       wall_time=time.perf_counter() - start)


def brute_optimum_all(instance: Instance, objectives: list[Objective],
                      policy: Policy = Policy.FORBID, budget: int | None = None
                      ) -> dict[Objective, SolveReport] | None:
    """Referee for several objectives sharing a single enumeration; ``None`` if infeasible."""
    best: dict[Objective, SolveReport] = {}
    for parts in enumerate_feasible_partitions(instance, policy, budget):
        for obj in objectives:
            value = evaluate(instance, obj, parts, policy)
            cur = best.get(obj)
            if better(obj.sense, value, None if cur is None else cur.value):
                best[obj] = SolveReport(value, parts, "brute", obj, policy)
    return best or None


# -- source problems of the hardness constructions ----------------------------

def _check_subsets(count: int, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    if count > 60 or 2 ** count > budget:
        raise BudgetExceeded(f"2^{count} subsets exceed the budget")


def densest_subgraph_value(vertex_count: int, edges, l: int, budget: int | None = None) -> int:
    """Maximum number of edges induced by ``l`` vertices."""
    _check_subsets(vertex_count, budget)
    return max(sum(1 for u, v in edges if u in chosen and v in chosen)
               for chosen in map(set, itertools.combinations(range(vertex_count), l)))


def min_set_cover(universe, family, budget: int | None = None) -> int | None:
    """Fewest members of ``family`` covering ``universe``; ``None`` when impossible."""
    universe = set(universe)
    family = [set(s) for s in family]
    _check_subsets(len(family), budget)
    for size in range(len(family) + 1):
        for combo in itertools.combinations(family, size):
            if universe <= set().union(*combo):
                return size
    return None


def is_satisfiable(clauses, budget: int | None = None) -> bool:
    """Truth-table check; ``clauses`` are lists of ``(variable, positive)`` literals."""
    variables = sorted({v for c in clauses for v, _ in c})
    _check_subsets(len(variables), budget)
    for bits in itertools.product((False, True), repeat=len(variables)):
        psi = dict(zip(variables, bits))
        if all(any(psi[v] == pos for v, pos in c) for c in clauses):
            return True
    return False


def brute_reference(problem: str, data, budget: int | None = None):
    """Optimum of a source problem: ``densest_subgraph`` (vertex_count, edges, l),
    ``set_cover`` (universe, family) or ``sat`` (clauses)."""
    if problem == "densest_subgraph":
        return densest_subgraph_value(*data, budget=budget)
    if problem == "set_cover":
        return min_set_cover(*data, budget=budget)
    if problem == "sat":
        return is_satisfiable(data, budget=budget)
    raise InvalidArgument(f"unknown reference problem {problem!r}")

