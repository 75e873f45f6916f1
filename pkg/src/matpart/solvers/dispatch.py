"""Route an objective to the best available algorithm.

Minimisation: exact polynomial algorithms where they exist, the matching
algorithms for identical matroids, the approximation algorithms for (sum, max)
when an epsilon is given, and otherwise exhaustive search within the budget.
Maximisation under FORBID pads the instance to base partitions, complements
the weights and solves the resulting minimisation problem when that one has an
exact algorithm.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import BudgetExceeded, InfeasibleInstance, InvalidArgument, Unsupported
from ..instance import Instance, Objective, Op, Policy, Sense, SolveReport, evaluate
from ..oracle import brute_optimum
from ..reductions.transforms import max_to_min_transform, to_base_partition_instance
from .approx import as_epsilon, solve_sum_max_epsk, solve_sum_max_ptas
from .exact import (solve_identical_max_min, solve_identical_sum_min, solve_min_max_max,
                    solve_min_min_max, solve_min_min_min, solve_min_min_sum, solve_min_sum_sum)
from .greedy import greedy_applies, solve_greedy

ALGORITHMS = ("auto", "exact", "ptas", "epsk", "matching", "greedy", "brute")

EXACT = {
    (Op.MIN, Op.MIN): solve_min_min_min,
    (Op.MAX, Op.MAX): solve_min_max_max,
    (Op.MIN, Op.MAX): solve_min_min_max,
    (Op.MIN, Op.SUM): solve_min_min_sum,
    (Op.SUM, Op.SUM): solve_min_sum_sum,
}
MATCHING = {
    (Op.MAX, Op.MIN): solve_identical_max_min,
    (Op.SUM, Op.MIN): solve_identical_sum_min,
}
HARD_NOTICE = {
    (Op.MAX, Op.MIN): "no polynomial approximation exists unless P=NP; solved by exhaustive search",
    (Op.SUM, Op.MIN): "no polynomial approximation exists unless P=NP; solved by exhaustive search",
    (Op.SUM, Op.MAX): "strongly NP-hard; solved by exhaustive search (pass an epsilon to approximate)",
    (Op.MAX, Op.SUM): "NP-hard; solved by exhaustive search",
}


def exact_route(instance: Instance, objective: Objective):
    """Polynomial exact minimisation algorithm for this objective, if any."""
    key = (objective.op1, objective.op2)
    if key in EXACT:
        return EXACT[key]
    if key in MATCHING and instance.identical_matroids:
        return MATCHING[key]
    if key == (Op.SUM, Op.MAX) and greedy_applies(instance):
        return solve_greedy
    return None


def _brute(instance, objective, policy, budget, notice: str | None) -> SolveReport:
    try:
        report = brute_optimum(instance, objective, policy, budget)
    except BudgetExceeded as exc:
        raise Unsupported(f"no polynomial exact algorithm for ({objective}) here and "
                          f"exhaustive search is out of budget: {exc}") from exc
    if notice:
        report.notes.append(notice)
    return report


def _minimize(instance, objective, policy, algorithm, epsilon, workers, budget) -> SolveReport:
    key = (objective.op1, objective.op2)
    if algorithm == "brute":
        return _brute(instance, objective, policy, budget, None)
    if algorithm in ("ptas", "epsk"):
        if key != (Op.SUM, Op.MAX):
            raise Unsupported(f"{algorithm} only handles the (sum, max) objective")
        if epsilon is None:
            raise InvalidArgument(f"{algorithm} needs an epsilon")
        solver = solve_sum_max_ptas if algorithm == "ptas" else solve_sum_max_epsk
        return solver(instance, epsilon, policy, workers=workers)
    if algorithm == "greedy":
        if key != (Op.SUM, Op.MAX):
            raise Unsupported("greedy only handles the (sum, max) objective")
        return solve_greedy(instance, policy)
    if algorithm == "matching":
        if key not in MATCHING:
            raise Unsupported("matching handles (max, min) and (sum, min) only")
        return MATCHING[key](instance, policy)
    route = exact_route(instance, objective)
    if route is not None and not (key == (Op.SUM, Op.MAX) and epsilon is not None
                                  and algorithm == "auto"):
        return route(instance, policy)
    if algorithm == "exact":
        raise Unsupported(f"no polynomial exact algorithm for ({objective}) on this instance")
    if key == (Op.SUM, Op.MAX) and epsilon is not None:
        if (instance.identical_matroids and instance.identical_weights
                and as_epsilon(epsilon) < Fraction(1, 2)):
            return solve_sum_max_ptas(instance, epsilon, policy, workers=workers)
        return solve_sum_max_epsk(instance, epsilon, policy, workers=workers)
    return _brute(instance, objective, policy, budget, HARD_NOTICE.get(key))


def _maximize(instance, objective, policy, algorithm, epsilon, workers, budget) -> SolveReport:
    if algorithm in ("ptas", "epsk", "greedy", "matching"):
        raise Unsupported(f"{algorithm} is a minimisation algorithm")
    if algorithm == "brute" or policy is Policy.ALLOW:
        return _brute(instance, objective, policy, budget, None)
    try:
        padded = to_base_partition_instance(instance, objective.op2)
    except InvalidArgument as exc:
        raise InfeasibleInstance(str(exc)) from exc
    flipped_instance, flipped = max_to_min_transform(padded.instance, objective)
    route = exact_route(flipped_instance, flipped)
    if route is None:
        if algorithm == "exact":
            raise Unsupported(f"no polynomial exact algorithm for maximum ({objective})")
        return _brute(instance, objective, policy, budget, None)
    inner = route(flipped_instance, Policy.FORBID)
    parts = padded.to_original(inner.parts)
    value = evaluate(instance, objective, parts, policy)
    return SolveReport(value, parts, f"max-to-min/{inner.algorithm}", objective, policy,
                       candidates=inner.candidates, feasibility_calls=inner.feasibility_calls,
                       wall_time=inner.wall_time,
                       notes=[f"solved as minimum ({flipped}) on {padded.dummy_count} padded dummies"])


def solve(instance: Instance, objective: Objective, policy: Policy = Policy.FORBID,
          algorithm: str = "auto", epsilon=None, workers: int = 1,
          budget: int | None = None) -> SolveReport:
    """Solve with the algorithm named by ``algorithm`` (``auto`` picks one)."""
    if algorithm not in ALGORITHMS:
        raise InvalidArgument(f"algorithm must be one of {ALGORITHMS}")
    if workers < 1:
        raise InvalidArgument("workers must be at least 1")
    handler = _minimize if objective.sense is Sense.MINIMIZE else _maximize
    report = handler(instance, objective, policy, algorithm, epsilon, workers, budget)
    report.objective = objective
    report.policy = policy
    return report
