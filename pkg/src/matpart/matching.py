"""Bipartite matching between parts ``[0, k)`` and elements ``[0, n)``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InfeasibleInstance


def has_right_perfect_matching(edges: Iterable[tuple[int, int]], k: int
                               ) -> tuple[bool, dict[int, int] | None]:
    """Is there a matching covering every part?  ``edges`` holds ``(element, part)`` pairs.

    Returns ``(True, {part: element})`` or ``(False, None)``.  Uses simple
    augmenting paths (Kuhn); k is small in every caller.
    """
    adj: dict[int, list[int]] = {i: [] for i in range(k)}
    for e, i in sorted(set(edges)):
        if 0 <= i < k:
            adj[i].append(e)
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for e in adj[i]:
            if e in seen:
                continue
            seen.add(e)
            if e not in owner or augment(owner[e], seen):
                owner[e] = i
                return True
        return False

    for i in range(k):
        if not augment(i, set()):
            return False, None
    return True, {i: e for e, i in owner.items()}


def min_weight_right_perfect_matching(costs: Sequence[Sequence]) -> tuple[Fraction, list[int]]:
    """Minimum-cost assignment of each of the ``k`` rows to a distinct column.

    Hungarian method with potentials, in exact arithmetic.  Returns the value
    and ``assignment[row] = column``.
    """
    k = len(costs)
    n = len(costs[0]) if k else 0
    if k > n:
        raise InfeasibleInstance(f"{k} parts cannot be matched into {n} elements")
    if k == 0:
        return Fraction(0), []
    c = [[Fraction(x) for x in row] for row in costs]
    # 1-based arrays, column 0 is the virtual start
    u = [Fraction(0)] * (k + 1)
    v = [Fraction(0)] * (n + 1)
    match_col = [0] * (n + 1)
    way = [0] * (n + 1)
    for row in range(1, k + 1):
        match_col[0] = row
        j0 = 0
        minv: list = [math.inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match_col[j0]
            delta: object = math.inf
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = c[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1
    assignment = [0] * k
    for j in range(1, n + 1):
        if match_col[j]:
            assignment[match_col[j] - 1] = j - 1
    value = sum((c[i][assignment[i]] for i in range(k)), Fraction(0))
    return value, assignment
