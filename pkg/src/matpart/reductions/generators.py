"""Instance generators: hardness gadgets with their witness partitions, and random instances."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidArgument
from ..instance import Instance, Objective, Op, Partition, Policy, evaluate
from ..matroid import (FreeMatroid, GraphicMatroid, Loopify, Matroid, PartitionMatroid,
                       Truncation, UniformMatroid)

# -- densest subgraph ---------------------------------------------------------


@dataclass(frozen=True)
class DensestGadget:
    """Grid gadget for densest ``l``-subgraph.

    Rows ``1..N`` (graph vertices, then ``2m`` dummy rows), columns ``1..N-1``
    with ``N = n + 2m``; element ``e_{ij}`` has index ``(i-1)(N-1) + (j-1)``.
    Graph vertices are ``0..n-1`` and vertex ``v`` owns row ``v + 1``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    l: int
    instance: Instance

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return self.vertex_count + 2 * self.m

    def element(self, i: int, j: int) -> int:
        return (i - 1) * (self.size - 1) + (j - 1)

    def weight(self, i: int, j: int) -> Fraction:
        return self.instance.weights[0][self.element(i, j)]

    def bound(self, alpha: int) -> int:
        """Value the witness for a vertex set with ``alpha`` induced edges stays within."""
        m, n, l = self.m, self.vertex_count, self.l
        return 2 * m * m * (n - l) + m * m + m - alpha


def densest_weight(n: int, edges: Sequence[tuple[int, int]], l: int, i: int, j: int) -> int:
    """Weight of ``e_{ij}`` (1-based row and column) in the gadget grid."""
    m = len(edges)
    if j <= l - 1:
        return 0
    if j >= l + 2 * m:
        return m if i <= n else 2 * m * m
    if i > n:
        return 0
    offset = j - l  # 0 .. 2m-1
    t = offset // 2 + 1
    if offset % 2 == 0:  # column l + 2t - 2
        return t - 1
    u, v = edges[t - 1]
    return t if i - 1 in (u, v) else t - 1


def _check_simple_graph(n: int, edges) -> tuple[tuple[int, int], ...]:
    out = []
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InvalidArgument(f"edge ({u}, {v}) is not an edge of a simple graph on {n} vertices")
        key = frozenset((u, v))
        if key in seen:
            raise InvalidArgument(f"edge ({u}, {v}) appears twice")
        seen.add(key)
        out.append((u, v))
    return tuple(out)


def gen_densest_subgraph(vertex_count: int, edges: Sequence[tuple[int, int]], l: int) -> DensestGadget:
    edges = _check_simple_graph(vertex_count, edges)
    if not 1 <= l <= vertex_count:
        raise InvalidArgument("need 1 <= l <= number of vertices")
    size = vertex_count + 2 * len(edges)
    cols = size - 1
    rows = [list(range(r * cols, (r + 1) * cols)) for r in range(size)]
    matroid = Truncation(PartitionMatroid(rows, [1] * size), cols)
    weights = [densest_weight(vertex_count, edges, l, i, j)
               for i in range(1, size + 1) for j in range(1, cols + 1)]
    instance = Instance(tuple([matroid] * size), tuple([tuple(weights)] * size), True, True,
                        {"generator": "densest", "vertices": vertex_count,
                         "edges": [list(e) for e in edges], "l": l})
    return DensestGadget(vertex_count, edges, l, instance)


def build_densest_witness_partition(gadget: DensestGadget, chosen: Sequence[int]) -> Partition:
    """Partition whose (sum, max)-value is at most ``gadget.bound(|F[chosen]|)``.

    Rows are relabelled so that the chosen vertices come first; the parts
    follow the three-range construction over column segments.
    """
    n, l, size = gadget.vertex_count, gadget.l, gadget.size
    chosen = list(dict.fromkeys(chosen))
    if len(chosen) != l or any(not 0 <= v < n for v in chosen):
        raise InvalidArgument(f"need {l} distinct vertices")
    order = sorted(chosen) + [v for v in range(n) if v not in set(chosen)]
    # construction row p (1-based) -> gadget row
    row_of = {p: order[p - 1] + 1 for p in range(1, n + 1)}
    row_of.update({p: p for p in range(n + 1, size + 1)})

    def seg(col: int, p: int, q: int) -> set[int]:
        if not 1 <= col <= size - 1:
            return set()
        return {gadget.element(row_of[r], col) for r in range(max(p, 1), min(q, size) + 1)}

    m = gadget.m
    parts = []
    for j in range(1, size + 1):
        if j <= l:
            part = seg(j - 1, 1, j - 1) | seg(j, j + 1, size)
        elif j <= l + 2 * m:
            part = (seg(j - 1, 1, l) | seg(j, l + 1, size + l - j)
                    | seg(j - 1, size + l - j + 2, size))
        else:
            part = seg(j - 1, 1, j - 2 * m - 1) | seg(j, j - 2 * m + 1, n) | seg(j - 1, n + 1, size)
        parts.append(frozenset(part))
    return tuple(parts)


# -- set cover ----------------------------------------------------------------

SETCOVER_VARIANTS = ("identical_matroids", "identical_weights")


def gen_setcover(universe: Sequence, family: Sequence[Sequence], variant: str) -> Instance:
    """(sum, max) instance whose optimum is the minimum cover size.

    Universe members take indices ``0..n-1`` in the given order; the
    ``(k-1)n`` dummies follow.
    """
    if variant not in SETCOVER_VARIANTS:
        raise InvalidArgument(f"variant must be one of {SETCOVER_VARIANTS}")
    universe = list(dict.fromkeys(universe))
    index = {x: i for i, x in enumerate(universe)}
    sets = []
    for s in family:
        if any(x not in index for x in s):
            raise InvalidArgument("family members must be subsets of the universe")
        sets.append(frozenset(index[x] for x in s))
    n, k = len(universe), len(sets)
    if n == 0 or k == 0:
        raise InvalidArgument("need a nonempty universe and family")
    total = k * n
    dummies = range(n, total)
    covers = set().union(*sets) == set(range(n))
    provenance = {"generator": "setcover", "variant": variant, "universe": universe,
                  "family": [sorted(universe[e] for e in s) for s in sets], "covers": covers}
    base = UniformMatroid(total, n)
    if variant == "identical_matroids":
        big = Fraction(k * k)
        weights = [[Fraction(1) if e in s else big for e in range(n)] + [Fraction(0)] * len(dummies)
                   for s in sets]
        return Instance.build([base] * k, weights, provenance=provenance)
    row = [Fraction(1)] * n + [Fraction(0)] * len(dummies)
    matroids = [Loopify(base, set(s) | set(dummies)) for s in sets]
    return Instance.build(matroids, [row] * k, provenance=provenance)


# -- SAT ----------------------------------------------------------------------

Literal = tuple[str, bool]
_LIT = re.compile(r"^\s*([!~¬-]?)\s*([A-Za-z_][A-Za-z0-9_]*)\s*$")


def parse_formula(text: str) -> list[list[Literal]]:
    """``"(x|!y)&(z)"`` into clauses of ``(variable, positive)`` literals."""
    clauses = []
    for raw in re.split(r"[&∧]", text):
        body = raw.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        if not body.strip():
            raise InvalidArgument(f"empty clause in {text!r}")
        clause = []
        for lit in re.split(r"[|∨]", body):
            match = _LIT.match(lit)
            if not match:
                raise InvalidArgument(f"cannot read literal {lit.strip()!r}")
            clause.append((match.group(2), not match.group(1)))
        clauses.append(clause)
    if not clauses:
        raise InvalidArgument("formula has no clauses")
    return clauses


def format_formula(clauses: Sequence[Sequence[Literal]]) -> str:
    return "&".join("(" + "|".join(("" if pos else "!") + v for v, pos in c) + ")" for c in clauses)


@dataclass(frozen=True)
class SatGadget:
    """Elements per variable ``x`` (in order of first appearance): ``x_d``, then
    ``x^C``, ``x̄^C`` for each clause ``C`` containing ``x``.

    Matroids: one per clause, then one per variable.
    """

    clauses: tuple[tuple[Literal, ...], ...]
    variables: tuple[str, ...]
    occurrences: dict = field(compare=False)  # variable -> clause indices in order
    pos_elem: dict = field(compare=False)  # (variable, clause) -> index of x^C
    neg_elem: dict = field(compare=False)  # (variable, clause) -> index of x̄^C
    dummy: dict = field(compare=False)  # variable -> index of x_d
    instance: Instance = field(compare=False)


def gen_sat(formula) -> SatGadget:
    clauses = parse_formula(formula) if isinstance(formula, str) else [list(c) for c in formula]
    norm = []
    for c in clauses:
        lits = tuple(dict.fromkeys((v, bool(p)) for v, p in c))
        if any((v, not p) in lits for v, p in lits):
            raise InvalidArgument("a clause with both x and !x is always true; drop it first")
        norm.append(lits)
    variables = tuple(dict.fromkeys(v for c in norm for v, _ in c))
    occ = {x: [ci for ci, c in enumerate(norm) if any(v == x for v, _ in c)] for x in variables}
    pos_elem, neg_elem, dummy = {}, {}, {}
    idx = 0
    for x in variables:
        dummy[x] = idx
        idx += 1
        for ci in occ[x]:
            pos_elem[x, ci] = idx
            neg_elem[x, ci] = idx + 1
            idx += 2
    n = idx
    weights = [Fraction(0)] * n
    for ci, c in enumerate(norm):
        for v, positive in c:
            # the literal's own copy is free, its complement costs 1
            weights[neg_elem[v, ci] if positive else pos_elem[v, ci]] = Fraction(1)

    def partition_matroid(pairs: list[list[int]], singles: list[int]) -> PartitionMatroid:
        used = {e for p in pairs for e in p} | set(singles)
        loops = [e for e in range(n) if e not in used]
        classes = pairs + [[e] for e in singles] + ([loops] if loops else [])
        caps = [1] * (len(pairs) + len(singles)) + ([0] if loops else [])
        return PartitionMatroid(classes, caps)

    matroids: list[Matroid] = []
    for ci, c in enumerate(norm):
        matroids.append(partition_matroid([[pos_elem[v, ci], neg_elem[v, ci]] for v, _ in c], []))
    for x in variables:
        cs = occ[x]
        s = len(cs)
        pairs = [[pos_elem[x, cs[i]], neg_elem[x, cs[(i + 1) % s]]] for i in range(s)]
        matroids.append(partition_matroid(pairs, [dummy[x]]))
    instance = Instance.build(matroids, [weights] * len(matroids),
                              provenance={"generator": "sat", "formula": format_formula(norm)})
    return SatGadget(tuple(norm), variables, occ, pos_elem, neg_elem, dummy, instance)


def build_sat_witness_partition(gadget: SatGadget, assignment: dict) -> Partition:
    """Zero-value partition from a satisfying assignment ``{variable: bool}``."""
    if any(x not in assignment for x in gadget.variables):
        raise InvalidArgument("assignment must cover every variable")
    parts = []
    for ci, c in enumerate(gadget.clauses):
        parts.append(frozenset(gadget.pos_elem[v, ci] if assignment[v] else gadget.neg_elem[v, ci]
                               for v, _ in c))
    for x in gadget.variables:
        true = bool(assignment[x])
        side = gadget.neg_elem if true else gadget.pos_elem
        parts.append(frozenset([side[x, ci] for ci in gadget.occurrences[x]] + [gadget.dummy[x]]))
    parts = tuple(parts)
    value = evaluate(gadget.instance, Objective(Op.MAX, Op.MIN), parts, Policy.FORBID)
    if value > 0:
        raise InvalidArgument("the assignment does not satisfy the formula")
    return parts


# -- random instances ---------------------------------------------------------

FAMILIES = ("free", "uniform", "partition", "graphic")


@dataclass(frozen=True)
class RandomParams:
    n: int
    k: int
    families: tuple[str, ...] = FAMILIES
    weight_range: tuple[int, int] = (0, 9)
    identical_matroids: bool = False
    identical_weights: bool = False


def random_matroid(rng: random.Random, n: int, family: str) -> Matroid:
    if family == "free":
        return FreeMatroid(n)
    if family == "uniform":
        return UniformMatroid(n, rng.randint(1, n))
    if family == "partition":
        count = rng.randint(1, n)
        classes: list[list[int]] = [[] for _ in range(count)]
        for e in range(n):
            classes[rng.randrange(count)].append(e)
        classes = [c for c in classes if c]
        return PartitionMatroid(classes, [rng.randint(1, len(c)) for c in classes])
    if family == "graphic":
        # a spanning tree keeps the multigraph connected; the rest are random extra edges
        vertices = rng.randint(2, min(n + 1, 5))
        edges = [(rng.randrange(v), v) for v in range(1, vertices)]
        while len(edges) < n:
            u, v = rng.sample(range(vertices), 2)
            edges.append((u, v))
        rng.shuffle(edges)
        return GraphicMatroid(vertices, edges)
    raise InvalidArgument(f"unknown matroid family {family!r}")


def gen_random(params: RandomParams, seed: int) -> Instance:
    """Reproducible random instance; the same seed always gives the same instance."""
    n, k = params.n, params.k
    if n < 1 or k < 1:
        raise InvalidArgument("need n >= 1 and k >= 1")
    if not params.families:
        raise InvalidArgument("no matroid family to draw from")
    lo, hi = params.weight_range
    if lo < 0 or hi < lo:
        raise InvalidArgument("weight range must satisfy 0 <= low <= high")
    rng = random.Random(seed)
    if params.identical_matroids:
        m = random_matroid(rng, n, rng.choice(params.families))
        matroids = [m] * k
    else:
        matroids = [random_matroid(rng, n, rng.choice(params.families)) for _ in range(k)]
    if params.identical_weights:
        row = [rng.randint(lo, hi) for _ in range(n)]
        weights = [row] * k
    else:
        weights = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(k)]
    return Instance.build(matroids, weights, provenance={"generator": "random", "seed": seed})
