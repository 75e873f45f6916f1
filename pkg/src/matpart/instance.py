"""Problem instances, objectives, partitions and their evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvalidArgument
from .matroid import Matroid

INF = math.inf

Value = Union[Fraction, float]  # float only ever for +inf
Partition = tuple[frozenset[int], ...]


class Op(str, Enum):
    MIN = "min"
    MAX = "max"
    SUM = "sum"


class Sense(str, Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class Policy(str, Enum):
    """What to do with empty parts.

    ``FORBID`` requires every part to be nonempty.  ``ALLOW`` admits empty
    parts, valued by the conventions max = 0, min = +inf, sum = 0.
    """

    FORBID = "forbid"
    ALLOW = "allow"


@dataclass(frozen=True)
class Objective:
    op1: Op
    op2: Op
    sense: Sense = Sense.MINIMIZE

    @classmethod
    def parse(cls, text: str, sense: str | Sense = Sense.MINIMIZE) -> Objective:
        """``"sum,max"`` style; ``∑``/``Σ`` are accepted for ``sum``."""
        pieces = [p.strip().lower().replace("∑", "sum").replace("σ", "sum") for p in text.split(",")]
        if len(pieces) != 2:
            raise InvalidArgument(f"objective must look like 'op1,op2', got {text!r}")
        try:
            return cls(Op(pieces[0]), Op(pieces[1]), Sense(sense))
        except ValueError as exc:
            raise InvalidArgument(str(exc)) from exc

    def __str__(self) -> str:
        return f"{self.op1.value},{self.op2.value}"


def to_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise InvalidArgument("booleans are not weights")
    if isinstance(x, float):
        raise InvalidArgument("weights must be exact (int, Fraction or 'p/q' string)")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not a rational number: {x!r}") from exc


@dataclass(frozen=True)
class Instance:
    """``k`` matroids on the shared ground set ``[0, n)`` with per-part weights."""

    matroids: tuple[Matroid, ...]
    weights: tuple[tuple[Fraction, ...], ...]
    identical_matroids: bool = False
    identical_weights: bool = False
    provenance: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        ms = tuple(self.matroids)
        ws = tuple(tuple(to_fraction(x) for x in row) for row in self.weights)
        object.__setattr__(self, "matroids", ms)
        object.__setattr__(self, "weights", ws)
        if not ms:
            raise InvalidArgument("an instance needs at least one matroid")
        n = ms[0].ground_size
        if n < 1:
            raise InvalidArgument("the ground set must be nonempty")
        if any(m.ground_size != n for m in ms):
            raise InvalidArgument("all matroids must share one ground set")
        if len(ws) != len(ms) or any(len(row) != n for row in ws):
            raise InvalidArgument("weights must be a k x n matrix")
        if any(x < 0 for row in ws for x in row):
            raise InvalidArgument("weights must be nonnegative")
        if self.identical_matroids and any(m != ms[0] for m in ms):
            raise InvalidArgument("identical_matroids set but matroids differ")
        if self.identical_weights and any(row != ws[0] for row in ws):
            raise InvalidArgument("identical_weights set but weight rows differ")

    @classmethod
    def build(cls, matroids: Sequence[Matroid], weights: Sequence[Sequence], *,
              detect_identical: bool = True, provenance: dict | None = None) -> Instance:
        """Construct an instance, setting the identical flags when they hold."""
        ws = [[to_fraction(x) for x in row] for row in weights]
        same_m = same_w = False
        if detect_identical:
            same_m = all(m == matroids[0] for m in matroids)
            same_w = all(row == ws[0] for row in ws)
        return cls(tuple(matroids), tuple(tuple(r) for r in ws), same_m, same_w, provenance)

    @property
    def n(self) -> int:
        return self.matroids[0].ground_size

    @property
    def k(self) -> int:
        return len(self.matroids)

    def max_weight(self) -> Fraction:
        return max((x for row in self.weights for x in row), default=Fraction(0))

    def with_weights(self, weights: Sequence[Sequence]) -> Instance:
        ws = tuple(tuple(to_fraction(x) for x in row) for row in weights)
        same_w = all(row == ws[0] for row in ws)
        return replace(self, weights=ws, identical_weights=same_w)

    def with_matroids(self, matroids: Sequence[Matroid]) -> Instance:
        ms = tuple(matroids)
        return replace(self, matroids=ms, identical_matroids=all(m == ms[0] for m in ms))


def normalize(parts: Iterable[Iterable[int]]) -> Partition:
    return tuple(frozenset(p) for p in parts)


def partition_problems(instance: Instance, parts: Sequence[Iterable[int]],
                       policy: Policy = Policy.FORBID) -> list[str]:
    """Every way ``parts`` fails to be a feasible partition (empty list if feasible)."""
    parts = normalize(parts)
    issues = []
    if len(parts) != instance.k:
        return [f"expected {instance.k} parts, got {len(parts)}"]
    seen: set[int] = set()
    for i, p in enumerate(parts):
        if p & seen:
            issues.append(f"part {i} overlaps an earlier part")
        seen |= p
        if any(not 0 <= e < instance.n for e in p):
            issues.append(f"part {i} has an element outside the ground set")
        elif not instance.matroids[i].is_independent(p):
            issues.append(f"part {i} is dependent")
        if policy is Policy.FORBID and not p:
            issues.append(f"part {i} is empty")
    if seen != set(range(instance.n)):
        issues.append("parts do not cover the ground set")
    return issues


def is_feasible(instance: Instance, parts: Sequence[Iterable[int]],
                policy: Policy = Policy.FORBID) -> bool:
    return not partition_problems(instance, parts, policy)


def _inner(op: Op, values: list[Fraction]) -> Value:
    if op is Op.SUM:
        return sum(values, Fraction(0))
    if not values:
        return INF if op is Op.MIN else Fraction(0)
    return min(values) if op is Op.MIN else max(values)


def evaluate(instance: Instance, objective: Objective, parts: Sequence[Iterable[int]],
             policy: Policy = Policy.FORBID) -> Value:
    """The (op1, op2)-value of a partition, with the empty-part conventions under ALLOW."""
    parts = normalize(parts)
    if len(parts) != instance.k:
        raise InvalidArgument(f"expected {instance.k} parts, got {len(parts)}")
    if policy is Policy.FORBID and any(not p for p in parts):
        raise InvalidArgument("empty part under the forbid policy")
    inner = [_inner(objective.op2, [instance.weights[i][e] for e in p]) for i, p in enumerate(parts)]
    if objective.op1 is Op.SUM:
        return sum(inner, Fraction(0))
    return min(inner) if objective.op1 is Op.MIN else max(inner)


def better(sense: Sense, a: Value, b: Value | None) -> bool:
    """Strict improvement of ``a`` over the incumbent ``b`` (``None`` = no incumbent)."""
    if b is None:
        return True
    return a < b if sense is Sense.MINIMIZE else a > b


@dataclass
class SolveReport:
    """Value, witness partition and solver telemetry."""

    value: Value
    parts: Partition
    algorithm: str
    objective: Objective | None = None
    policy: Policy = Policy.FORBID
    candidates: int = 0
    feasibility_calls: int = 0
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
