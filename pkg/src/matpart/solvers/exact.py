"""Exact polynomial-time solvers for the tractable objectives.

All of them reduce to a handful of feasibility or (sum, sum) calls on
thresholded or contracted copies of the input matroids.
"""

from __future__ import annotations

from fractions import Fraction

from ..engine import min_cost_partition, redistribute_pinned
from ..errors import InfeasibleInstance, Unsupported
from ..instance import INF, Instance, Objective, Op, Policy, SolveReport, evaluate
from ..matching import has_right_perfect_matching, min_weight_right_perfect_matching
from ..matroid import Contraction, Deletion, Loopify
from .common import Probe, below, distinct, min_sizes_for, require_feasible, restrict

MIN_MIN = Objective(Op.MIN, Op.MIN)
MAX_MAX = Objective(Op.MAX, Op.MAX)
MIN_MAX = Objective(Op.MIN, Op.MAX)
MIN_SUM = Objective(Op.MIN, Op.SUM)
SUM_SUM = Objective(Op.SUM, Op.SUM)
MAX_MIN = Objective(Op.MAX, Op.MIN)
SUM_MIN = Objective(Op.SUM, Op.MIN)


def _report(instance, objective, parts, policy, name, probe, **extra) -> SolveReport:
    return SolveReport(evaluate(instance, objective, parts, policy), parts, name, objective, policy,
                       candidates=probe.candidates, feasibility_calls=probe.calls,
                       wall_time=probe.elapsed(), extra=extra)


def solve_min_min_min(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Smallest weight any element can carry in its part.

    Pairs ``(i, e)`` are tried by increasing ``w_i(e)``; the first for which
    the rest of the ground set can be partitioned, with ``M_i`` contracted by
    ``e``, is optimal.
    """
    probe = Probe()
    k, n = instance.k, instance.n
    pairs = sorted((instance.weights[i][e], e, i) for i in range(k) for e in range(n)
                   if not instance.matroids[i].is_loop(e))
    for w, e, i in pairs:
        probe.candidates += 1
        ms = [Contraction(m, {e}) if j == i else Deletion(m, {e})
              for j, m in enumerate(instance.matroids)]
        mins = min_sizes_for(policy, k)
        mins[i] = 0
        res = probe.feasible(ms, mins)
        if res:
            kept = ms[0].index_map
            parts = tuple(kept.to_old(p) | ({e} if j == i else frozenset())
                          for j, p in enumerate(res.parts))
            return _report(instance, MIN_MIN, parts, policy, "min-min-min", probe)
    raise InfeasibleInstance("no feasible partition exists")


def solve_min_max_max(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Bottleneck partition: binary search for the smallest feasible weight threshold."""
    probe = Probe()
    first = require_feasible(instance, policy, probe)
    mins = min_sizes_for(policy, instance.k)
    cands = distinct(x for row in instance.weights for x in row)
    lo, hi = 0, len(cands) - 1
    best = first.parts
    while lo < hi:
        mid = (lo + hi) // 2
        probe.candidates += 1
        ms = [restrict(m, below(w, cands[mid]))
              for m, w in zip(instance.matroids, instance.weights)]
        res = probe.feasible(ms, mins)
        if res:
            hi, best = mid, res.parts
        else:
            lo = mid + 1
    return _report(instance, MAX_MAX, best, policy, "min-max-max", probe)


def solve_min_min_max(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Minimise the smallest part maximum.

    For each part ``i*`` the thresholds ``w_{i*}(e)`` are scanned upward with
    only ``M_{i*}`` restricted and part ``i*`` kept nonempty.  Under ALLOW an
    empty part is worth 0, which is tried first.
    """
    probe = Probe()
    require_feasible(instance, policy, probe)
    k = instance.k
    if policy is Policy.ALLOW:
        for i in range(k):
            ms = list(instance.matroids)
            ms[i] = Loopify(ms[i], ())
            probe.candidates += 1
            res = probe.feasible(ms, [0] * k)
            if res:
                return _report(instance, MIN_MAX, res.parts, policy, "min-min-max", probe)
    best = None
    for i in range(k):
        mins = min_sizes_for(policy, k)
        mins[i] = 1
        for w in distinct(instance.weights[i]):
            if best is not None and w >= best[0]:
                break
            probe.candidates += 1
            ms = list(instance.matroids)
            ms[i] = restrict(ms[i], below(instance.weights[i], w))
            res = probe.feasible(ms, mins)
            if res:
                best = (w, res.parts)
                break
    if best is None:
        raise InfeasibleInstance("no feasible partition exists")
    return _report(instance, MIN_MAX, best[1], policy, "min-min-max", probe)


def solve_min_min_sum(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Minimise the lightest part: one (sum, sum) call per part, with the other rows zeroed."""
    probe = Probe()
    require_feasible(instance, policy, probe)
    k, n = instance.k, instance.n
    mins = min_sizes_for(policy, k)
    best = None
    for j in range(k):
        ws = [instance.weights[i] if i == j else [Fraction(0)] * n for i in range(k)]
        probe.candidates += 1
        value, parts = min_cost_partition(instance.matroids, ws, mins)
        if best is None or value < best[0]:
            best = (value, parts)
    return _report(instance, MIN_SUM, best[1], policy, "min-min-sum", probe)


def solve_min_sum_sum(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    probe = Probe()
    probe.candidates = 1
    _, parts = min_cost_partition(instance.matroids, instance.weights,
                                  min_sizes_for(policy, instance.k))
    return _report(instance, SUM_SUM, parts, policy, "min-sum-sum", probe)


# -- identical matroids -------------------------------------------------------

def _identical_base(instance: Instance, policy: Policy, probe: Probe):
    """A feasible partition to redistribute, or ``None`` when one part must stay empty."""
    if not instance.identical_matroids:
        raise Unsupported("this solver needs identical matroids")
    res = probe.feasible(instance.matroids, [0] * instance.k)
    if not res:
        raise InfeasibleInstance(res.reason or "no feasible partition exists")
    if instance.n < instance.k:
        if policy is Policy.FORBID:
            raise InfeasibleInstance("fewer elements than parts")
        return None, res.parts
    return res.parts, res.parts


def solve_identical_max_min(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Minimise the largest part minimum when all matroids coincide.

    The optimum is the least ``w`` for which every part can be matched to a
    distinct element of weight at most ``w``; any feasible partition is then
    rearranged so that part ``i`` holds its matched element.
    """
    probe = Probe()
    base, fallback = _identical_base(instance, policy, probe)
    if base is None:
        return SolveReport(INF, fallback, "identical-max-min", MAX_MIN, policy,
                           feasibility_calls=probe.calls, wall_time=probe.elapsed())
    k, n = instance.k, instance.n
    m = instance.matroids[0]
    for w in distinct(x for row in instance.weights for x in row):
        probe.candidates += 1
        edges = [(e, i) for i in range(k) for e in range(n) if instance.weights[i][e] <= w]
        ok, match = has_right_perfect_matching(edges, k)
        if ok:
            pins = [match[i] for i in range(k)]
            parts = redistribute_pinned(m, base, pins)
            return _report(instance, MAX_MIN, parts, policy, "identical-max-min", probe,
                           representatives=pins)
    raise InfeasibleInstance("no right-perfect matching exists")


def solve_identical_sum_min(instance: Instance, policy: Policy = Policy.FORBID) -> SolveReport:
    """Minimise the sum of part minima when all matroids coincide (min-cost assignment)."""
    probe = Probe()
    base, fallback = _identical_base(instance, policy, probe)
    if base is None:
        return SolveReport(INF, fallback, "identical-sum-min", SUM_MIN, policy,
                           feasibility_calls=probe.calls, wall_time=probe.elapsed())
    probe.candidates = 1
    _, pins = min_weight_right_perfect_matching(instance.weights)
    parts = redistribute_pinned(instance.matroids[0], base, pins)
    return _report(instance, SUM_MIN, parts, policy, "identical-sum-min", probe,
                   representatives=list(pins))
