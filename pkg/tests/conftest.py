"""Shared test fixtures and independent oracles.

The oracles here deliberately avoid the library's evaluation and search
paths: committees come from itertools over the expanded slot list, objective
values from plain Python loops.  Library results are checked against these,
never against themselves.
"""

from __future__ import annotations

import itertools
import math

import pytest

from multifac.families import Family, FamilySpec, generate
from multifac.objectives import Aggregator, CostKind, Instance


def naive_committees(inst: Instance) -> list[tuple[int, ...]]:
    """All distinct size-k multisets via combinations of the expanded slots."""
    slots = []
    for p, m in inst.facilities:
        slots.extend([p] * m)
    seen = sorted({tuple(sorted(c))
                   for c in itertools.combinations(slots, inst.k)})
    return seen


def naive_client_cost(inst: Instance, point: int, sol, cost) -> float:
    ds = [float(inst.space.dist[point, s]) for s in sol]
    if cost.kind is CostKind.SUM:
        return sum(ds)
    if cost.kind is CostKind.MAX:
        return max(ds)
    if cost.kind is CostKind.MIN:
        return min(ds)
    return sorted(ds)[cost.q - 1]


def naive_objective(inst: Instance, sol, spec) -> float:
    costs = [(naive_client_cost(inst, p, sol, spec.client_cost), w)
             for p, w in inst.clients]
    if spec.aggregator is Aggregator.MAX:
        return max(c for c, _ in costs)
    if spec.aggregator is Aggregator.SUM:
        return sum(c * w for c, w in costs)
    remaining = spec.l
    total = 0.0
    for c, w in sorted(costs, key=lambda t: -t[0]):
        take = min(w, remaining)
        total += c * take
        remaining -= take
        if remaining == 0:
            break
    return total


def naive_optimum(inst: Instance, spec) -> tuple[tuple[int, ...], float]:
    """First lexicographic minimizer over the naive committee list."""
    best_sol, best_val = None, math.inf
    for sol in naive_committees(inst):
        v = naive_objective(inst, sol, spec)
        if v < best_val:
            best_sol, best_val = sol, v
    return best_sol, best_val


def random_instance(seed: int, *, max_points: int = 8, weight_cap: int = 12) -> Instance:
    family = Family.RANDOM_EUCLIDEAN if seed % 2 == 0 else Family.RANDOM_METRIC
    return generate(FamilySpec(family=family, n=2 + seed % (weight_cap - 1),
                               seed=seed, points=4 + seed % (max_points - 3)))


@pytest.fixture
def fig2():
    return generate(FamilySpec(Family.FIG2, n=5))


@pytest.fixture
def fig3():
    return generate(FamilySpec(Family.FIG3, n=10))


@pytest.fixture
def fig5():
    return generate(FamilySpec(Family.FIG5))
