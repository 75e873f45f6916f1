"""Approximation algorithms for minimising the sum of part maxima.

Both algorithms guess upper bounds on the part maxima, restrict each matroid
to the elements below its bound and keep the cheapest feasible guess.  Guesses
that produce the same restricted instance share one feasibility call.
"""

from __future__ import annotations

import itertools
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from ..engine import find_feasible_partition
from ..errors import InfeasibleInstance, InvalidArgument, Unsupported
from ..instance import Instance, Objective, Op, Partition, Policy, SolveReport, evaluate
from .common import Probe, below, min_sizes_for, restrict

SUM_MAX = Objective(Op.SUM, Op.MAX)


def floor_log(base: Fraction, x: Fraction) -> int:
    """Largest integer t with ``base**t <= x`` (``base > 1``), by exact multiplication."""
    if base <= 1:
        raise InvalidArgument("logarithm base must exceed 1")
    if x <= 0:
        raise InvalidArgument("logarithm of a nonpositive number")
    t = 0
    if x >= 1:
        p = base
        while p <= x:
            p *= base
            t += 1
        return t
    p = Fraction(1)
    while p > x:
        p /= base
        t -= 1
    return t


def as_epsilon(epsilon) -> Fraction:
    try:
        eps = Fraction(epsilon)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"epsilon must be rational, got {epsilon!r}") from exc
    return eps


@dataclass(frozen=True)
class PtasParams:
    """Guessing grid of the scheme.

    ``indices`` are the 1-based part positions whose maxima are guessed; parts
    between two consecutive indices share the earlier guess.  ``values`` is the
    rounded weight ladder ``{0} ∪ {unit·(1+ε)^t}``.
    """

    epsilon: Fraction
    k: int
    indices: tuple[int, ...]
    values: tuple[Fraction, ...]
    clipped: bool

    @property
    def s(self) -> int:
        return len(self.indices)

    @property
    def value_count(self) -> int:
        return len(self.values)

    @property
    def candidate_count(self) -> int:
        return math.comb(self.value_count + self.s - 1, self.s)

    def round(self, w: Fraction) -> Fraction:
        """Largest ladder value not exceeding ``w``."""
        best = self.values[0]
        for v in self.values:
            if v <= w:
                best = v
        return best


def ptas_params(k: int, epsilon, w_max) -> PtasParams:
    eps = as_epsilon(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise InvalidArgument("epsilon must lie strictly between 0 and 1/2")
    if k < 1:
        raise InvalidArgument("k must be positive")
    w_max = Fraction(w_max)
    q = math.floor(1 / eps ** 2)
    clipped = q >= k or k * eps ** 2 < 1 + eps
    if clipped:
        indices = tuple(range(1, k + 1))
    else:
        extra = floor_log(1 + eps, k * eps ** 2)
        indices = tuple(range(1, q + 1)) + tuple(
            math.floor((1 + eps) ** t / eps ** 2) for t in range(1, extra + 1))
    top = floor_log(1 + eps, k / eps)
    unit = w_max * eps / k
    values = (Fraction(0),) + tuple(unit * (1 + eps) ** t for t in range(top + 1))
    if w_max == 0:
        values = (Fraction(0),)
    return PtasParams(eps, k, indices, values, clipped)


def _search(instance: Instance, policy: Policy, guesses: Iterable, allowed_of: Callable,
            probe: Probe, workers: int) -> tuple[Partition | None, int]:
    """Best (sum, max) partition over all guesses.

    Returns the witness and the number of guesses examined; ``probe.calls``
    grows by the number of distinct restricted instances tested.  The reduce
    keeps the smallest value and, among equals, the earliest guess, so the
    result does not depend on ``workers``.
    """
    mins = min_sizes_for(policy, instance.k)
    cache: dict = {}
    lock = threading.Lock()

    def test(key):
        with lock:
            if key in cache:
                return cache[key]
        res = find_feasible_partition([restrict(m, a) for m, a in zip(instance.matroids, key)],
                                      mins)
        parts = res.parts if res else None
        value = evaluate(instance, SUM_MAX, parts, policy) if parts is not None else None
        with lock:
            cache.setdefault(key, (value, parts))
            return cache[key]

    def best_of(chunk: list[tuple[int, object]]):
        best = None
        for idx, guess in chunk:
            value, parts = test(allowed_of(guess))
            if parts is not None and (best is None or value < best[0]):
                best = (value, idx, parts)
        return best

    def chunks(it: Iterator, size: int):
        it = iter(enumerate(it))
        while True:
            block = list(itertools.islice(it, size))
            if not block:
                return
            yield block

    examined = 0
    winners = []
    if workers <= 1:
        for block in chunks(guesses, 4096):
            examined += len(block)
            winners.append(best_of(block))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(chunks(guesses, 512))
            examined = sum(len(b) for b in blocks)
            winners = list(pool.map(best_of, blocks))
    winners = [w for w in winners if w is not None]
    probe.calls += len(cache)
    probe.candidates += examined
    if not winners:
        return None, examined
    _, _, parts = min(winners, key=lambda t: (t[0], t[1]))
    return parts, examined


def solve_sum_max_ptas(instance: Instance, epsilon, policy: Policy = Policy.FORBID,
                       workers: int = 1) -> SolveReport:
    """Polynomial-time approximation scheme for identical matroids and weights.

    Within ``1 + 15.5ε`` of the optimum.  Returned parts are sorted by
    nonincreasing maximum.
    """
    eps = as_epsilon(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise InvalidArgument("epsilon must lie strictly between 0 and 1/2")
    if not (instance.identical_matroids and instance.identical_weights):
        raise Unsupported("the approximation scheme needs identical matroids and weights")
    probe = Probe()
    k = instance.k
    w = instance.weights[0]
    params = ptas_params(k, eps, max(w))
    rounded = [params.round(x) for x in w]
    ladder = sorted(set(params.values), reverse=True)
    # position j of each part (0-based): i_j <= i+1 < i_{j+1}
    bounds = list(params.indices) + [k + 1]
    group = [next(j for j in range(params.s) if bounds[j] <= i + 1 < bounds[j + 1])
             for i in range(k)]
    allowed_cache = {u: below(rounded, u) for u in ladder}

    def allowed_of(us):
        return tuple(allowed_cache[us[group[i]]] for i in range(k))

    guesses = itertools.combinations_with_replacement(ladder, params.s)
    parts, examined = _search(instance, policy, guesses, allowed_of, probe, workers)
    if parts is None:
        raise InfeasibleInstance("no guess admits a feasible partition")
    parts = tuple(sorted(parts, key=lambda p: (-max((w[e] for e in p), default=Fraction(0)),
                                               sorted(p))))
    value = evaluate(instance, SUM_MAX, parts, policy)
    return SolveReport(value, parts, "ptas", SUM_MAX, policy, candidates=examined,
                       feasibility_calls=probe.calls, wall_time=probe.elapsed(),
                       extra={"epsilon": eps, "s": params.s, "indices": list(params.indices),
                              "value_count": params.value_count, "clipped": params.clipped})


def solve_sum_max_epsk(instance: Instance, epsilon, policy: Policy = Policy.FORBID,
                       workers: int = 1) -> SolveReport:
    """``εk``-approximation for arbitrary matroids and weights.

    Guesses the ``⌈1/ε⌉`` largest part maxima exactly (which parts and which
    values); all other parts are capped by the smallest guess.
    """
    eps = as_epsilon(epsilon)
    if eps <= 0:
        raise InvalidArgument("epsilon must be positive")
    probe = Probe()
    k = instance.k
    r = math.ceil(1 / eps)
    size = min(r, k)
    thresholds = []
    for i in range(k):
        vals = set(instance.weights[i])
        if policy is Policy.ALLOW and k > 1:
            vals.add(Fraction(0))  # an empty part has maximum 0
        thresholds.append(sorted(vals))

    def guesses():
        for chosen in itertools.combinations(range(k), size):
            for us in itertools.product(*(thresholds[i] for i in chosen)):
                yield chosen, us

    def allowed_of(guess):
        chosen, us = guess
        cap = min(us)
        limit = [cap] * k
        for i, u in zip(chosen, us):
            limit[i] = u
        return tuple(below(instance.weights[i], limit[i]) for i in range(k))

    parts, examined = _search(instance, policy, guesses(), allowed_of, probe, workers)
    if parts is None:
        raise InfeasibleInstance("no guess admits a feasible partition")
    value = evaluate(instance, SUM_MAX, parts, policy)
    return SolveReport(value, parts, "epsk", SUM_MAX, policy, candidates=examined,
                       feasibility_calls=probe.calls, wall_time=probe.elapsed(),
                       extra={"epsilon": eps, "r": r})
