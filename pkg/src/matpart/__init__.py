"""Optimal matroid partitioning with independence oracles.

Partition a ground set into ``k`` parts, part ``i`` independent in matroid
``M_i``, so that an (op1, op2)-value with op1, op2 in {min, max, sum} is
minimised or maximised.
"""

from .engine import (FeasibilityResult, find_feasible_partition, min_cost_partition,
                     min_sum_sum_partition, redistribute_pinned, union_coverage)
from .errors import (AxiomViolation, BudgetExceeded, InfeasibleInstance, InvalidArgument,
                     MatpartError, ParseError, Unsupported)
from .instance import (INF, Instance, Objective, Op, Partition, Policy, Sense, SolveReport,
                       evaluate, is_feasible)
from .matching import has_right_perfect_matching, min_weight_right_perfect_matching
from .matroid import (AxiomReport, Contraction, Deletion, DirectSum, FreeMatroid,
                      GraphicMatroid, IndexMap, Loopify, Matroid, PartitionMatroid, Truncation,
                      UniformMatroid, contract, delete, direct_sum, from_descriptor,
                      is_independent, loopify, rank_of, truncate, verify_axioms)
from .oracle import brute_optimum, brute_reference, enumerate_feasible_partitions
from .solvers.dispatch import solve

__version__ = "0.1.0"
