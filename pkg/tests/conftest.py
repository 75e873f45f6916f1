from __future__ import annotations

import itertools
from pathlib import Path

import pytest
from hypothesis import settings

from matpart import FreeMatroid, Instance, Objective, Op, Sense
from matpart.reductions.generators import RandomParams, gen_random

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

OPS = (Op.MIN, Op.MAX, Op.SUM)
ALL_OBJECTIVES = [Objective(a, b, s) for a in OPS for b in OPS for s in Sense]


def x1() -> Instance:
    """Two free matroids on three elements, weights 1, 2, 3 in both rows."""
    return Instance.build([FreeMatroid(3)] * 2, [[1, 2, 3]] * 2)


def subsets(n: int):
    for r in range(n + 1):
        yield from map(frozenset, itertools.combinations(range(n), r))


def random_instance(seed: int, n: int, k: int, **kw) -> Instance:
    return gen_random(RandomParams(n, k, **kw), seed)


@pytest.fixture
def x1_instance() -> Instance:
    return x1()
