"""Instance transforms: padding to base partitions and turning maximisation into minimisation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InfeasibleInstance, InvalidArgument
from ..instance import Instance, Objective, Op, Partition, Sense
from ..matroid import DirectSum, Truncation, UniformMatroid


@dataclass(frozen=True)
class BasePartitionMap:
    """Padded instance whose feasible partitions are exactly its base partitions.

    Dummy elements occupy indices ``original_n .. original_n + dummy_count - 1``.
    """

    instance: Instance
    original_n: int
    dummy_count: int

    def to_original(self, parts) -> Partition:
        return tuple(frozenset(e for e in p if e < self.original_n) for p in parts)

    def is_dummy(self, e: int) -> bool:
        return e >= self.original_n


def _op2(objective) -> Op:
    if isinstance(objective, Objective):
        return objective.op2
    return Op(objective)


def to_base_partition_instance(instance: Instance, objective: Objective | Op | str = Op.SUM
                               ) -> BasePartitionMap:
    """Add ``sum(rank_i) - n`` dummies so that every feasible partition uses bases.

    Part ``i`` may take at most ``rank_i - 1`` dummies, so it always keeps at
    least one original element.  Dummy weights are neutral for the inner
    operator: the row minimum under max, the row maximum under min, 0 under sum.
    """
    op2 = _op2(objective)
    ranks = [m.rank for m in instance.matroids]
    n = instance.n
    if any(r == 0 for r in ranks):
        raise InvalidArgument("every matroid needs positive rank")
    extra = sum(ranks) - n
    if extra < 0:
        raise InfeasibleInstance(f"total rank {sum(ranks)} is below the {n} elements")
    if extra == 0:
        return BasePartitionMap(instance, n, 0)
    matroids = [Truncation(DirectSum([m, UniformMatroid(extra, r - 1)]), r)
                for m, r in zip(instance.matroids, ranks)]
    weights = []
    for row in instance.weights:
        if op2 is Op.MAX:
            pad = min(row)
        elif op2 is Op.MIN:
            pad = max(row)
        else:
            pad = Fraction(0)
        weights.append(list(row) + [pad] * extra)
    padded = Instance.build(matroids, weights, provenance=instance.provenance)
    return BasePartitionMap(padded, n, extra)


_SWAP = {Op.MIN: Op.MAX, Op.MAX: Op.MIN, Op.SUM: Op.SUM}


def max_min_constant(instance: Instance, objective: Objective) -> Fraction:
    """Value of ``original + transformed`` on every base partition."""
    w_max = instance.max_weight()
    if objective.op2 is Op.SUM:
        return instance.n * w_max
    if objective.op1 is Op.SUM:
        return instance.k * w_max
    return w_max


def max_to_min_transform(instance: Instance, objective: Objective) -> tuple[Instance, Objective]:
    """Complement the weights and swap min/max so that optimisation direction flips.

    Requires ``n == sum(rank_i)``; on base partitions the two objective values
    add up to :func:`max_min_constant`.
    """
    ranks = [m.rank for m in instance.matroids]
    if sum(ranks) != instance.n:
        raise InvalidArgument("the transform needs n equal to the total rank; pad the instance first")
    if any(r == 0 for r in ranks):
        raise InvalidArgument("every matroid needs positive rank")
    w_max = instance.max_weight()
    n = instance.n
    scaled = objective.op1 in (Op.MIN, Op.MAX) and objective.op2 is Op.SUM
    weights = []
    for row, r in zip(instance.weights, ranks):
        c = Fraction(n, r) * w_max if scaled else w_max
        weights.append([c - x for x in row])
    sense = Sense.MINIMIZE if objective.sense is Sense.MAXIMIZE else Sense.MAXIMIZE
    flipped = Objective(_SWAP[objective.op1], _SWAP[objective.op2], sense)
    return Instance.build(instance.matroids, weights, provenance=instance.provenance), flipped
