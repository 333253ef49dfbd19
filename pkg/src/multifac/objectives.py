"""Instances, committees, and the cost functions evaluated on them.

A committee (solution) is a sorted tuple of facility point ids, one entry
per chosen slot.  Per-client cost is the sum of distances to the slots, the
maximum distance, or the distance to the q-th closest slot; the instance
objective aggregates per-client costs with max, weighted sum, or the
weighted top-l sum (centrum).  Max-style aggregation ignores weights: a
weight of w means w co-located clients, which never changes a maximum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import ValidationError
from .metric import MetricSpace

Solution = tuple[int, ...]


class Aggregator(enum.Enum):
    MAX = "max"
    SUM = "sum"
    L_CENTRUM = "centrum"


class CostKind(enum.Enum):
    SUM = "sum"
    MAX = "max"
    Q_SOCIAL = "q"
    MIN = "min"  # negative-test cost only, never an optimization objective


@dataclass(frozen=True)
class ClientCost:
    """Per-client cost of a committee: sum, max, q-th closest, or min."""

    kind: CostKind
    q: Optional[int] = None

    def __post_init__(self):
        if self.kind is CostKind.Q_SOCIAL:
            if self.q is None or self.q < 1:
                raise ValidationError("q-social cost needs q >= 1")
        elif self.q is not None:
            raise ValidationError(f"{self.kind.value} cost takes no q parameter")

    def name(self) -> str:
        if self.kind is CostKind.Q_SOCIAL:
            return f"q:{self.q}"
        return self.kind.value


COST_SUM = ClientCost(CostKind.SUM)
COST_MAX = ClientCost(CostKind.MAX)
COST_MIN = ClientCost(CostKind.MIN)


def cost_q_social(q: int) -> ClientCost:
    return ClientCost(CostKind.Q_SOCIAL, q)


@dataclass(frozen=True)
class ObjectiveSpec:
    """An optimization objective: aggregator over clients of a per-client cost."""

    aggregator: Aggregator
    client_cost: ClientCost
    l: Optional[int] = None

    def __post_init__(self):
        if self.client_cost.kind is CostKind.MIN:
            raise ValidationError("min client cost is not a supported objective")
        if self.aggregator is Aggregator.L_CENTRUM:
            if self.l is None or self.l < 1:
                raise ValidationError("centrum aggregator needs l >= 1", code="L_OUT_OF_RANGE")
        elif self.l is not None:
            raise ValidationError(f"{self.aggregator.value} aggregator takes no l parameter")

    def name(self) -> str:
        if self.aggregator is Aggregator.L_CENTRUM:
            return f"centrum:{self.l}:{self.client_cost.name()}"
        return f"{self.aggregator.value}-{self.client_cost.name()}"


SUM_SUM = ObjectiveSpec(Aggregator.SUM, COST_SUM)
MAX_SUM = ObjectiveSpec(Aggregator.MAX, COST_SUM)
SUM_MAX = ObjectiveSpec(Aggregator.SUM, COST_MAX)
MAX_MAX = ObjectiveSpec(Aggregator.MAX, COST_MAX)


def parse_client_cost(text: str) -> ClientCost:
    if text == "sum":
        return COST_SUM
    if text == "max":
        return COST_MAX
    if text.startswith("q:"):
        try:
            return cost_q_social(int(text[2:]))
        except ValueError:
            raise ValidationError(f"bad q-social cost {text!r}") from None
    raise ValidationError(f"unknown client cost {text!r}")


def parse_objective(name: str) -> ObjectiveSpec:
    """Parse objective names: sum-sum, max-sum, sum-max, max-max,
    centrum:<l>:<sum|max|q:<q>>."""
    if name.startswith("centrum:"):
        parts = name.split(":", 2)
        if len(parts) != 3:
            raise ValidationError(f"bad centrum objective {name!r}")
        try:
            l = int(parts[1])
        except ValueError:
            raise ValidationError(f"bad centrum level in {name!r}") from None
        return ObjectiveSpec(Aggregator.L_CENTRUM, parse_client_cost(parts[2]), l=l)
    pairs = {
        "sum-sum": SUM_SUM,
        "max-sum": MAX_SUM,
        "sum-max": SUM_MAX,
        "max-max": MAX_MAX,
    }
    if name in pairs:
        return pairs[name]
    raise ValidationError(f"unknown objective {name!r}")


@dataclass(frozen=True)
class Instance:
    """Clients with integer weights, a facility multiset, and committee size k.

    A client weight of w stands for w co-located clients.  Facility
    multiplicity bounds how many committee slots the point may fill.
    """

    space: MetricSpace
    clients: tuple[tuple[int, int], ...]
    facilities: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self):
        p = self.space.point_count
        clients = tuple((int(c), int(w)) for c, w in self.clients)
        if not clients:
            raise ValidationError("instance needs at least one client")
        for i, (pt, w) in enumerate(clients):
            if not 0 <= pt < p:
                raise ValidationError(f"clients[{i}].point {pt} out of range")
            if w < 1:
                raise ValidationError(f"clients[{i}].weight must be >= 1")
        merged: dict[int, int] = {}
        for pt, m in self.facilities:
            pt, m = int(pt), int(m)
            if not 0 <= pt < p:
                raise ValidationError(f"facility point {pt} out of range")
            if m < 1:
                raise ValidationError("facility multiplicity must be >= 1")
            merged[pt] = merged.get(pt, 0) + m
        if not merged:
            raise ValidationError("instance needs at least one facility")
        facilities = tuple(sorted(merged.items()))
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.k > sum(m for _, m in facilities):
            raise ValidationError("k exceeds total facility multiplicity")
        object.__setattr__(self, "clients", clients)
        object.__setattr__(self, "facilities", facilities)
        object.__setattr__(self, "k", int(self.k))

    @cached_property
    def client_points(self) -> np.ndarray:
        return np.array([c for c, _ in self.clients], dtype=np.int64)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.clients], dtype=np.float64)

    @cached_property
    def total_weight(self) -> int:
        return int(sum(w for _, w in self.clients))

    @cached_property
    def facility_points(self) -> np.ndarray:
        return np.array([f for f, _ in self.facilities], dtype=np.int64)

    @cached_property
    def facility_mults(self) -> np.ndarray:
        return np.array([m for _, m in self.facilities], dtype=np.int64)

    @cached_property
    def client_facility_dist(self) -> np.ndarray:
        """Distance matrix restricted to client rows and facility columns."""
        d = self.space.dist[np.ix_(self.client_points, self.facility_points)]
        return np.ascontiguousarray(d)

    def multiplicity(self, point: int) -> int:
        return dict(self.facilities).get(point, 0)

    def is_valid_solution(self, slots: Iterable[int]) -> bool:
        slots = tuple(slots)
        if len(slots) != self.k:
            return False
        avail = dict(self.facilities)
        for s in set(slots):
            if slots.count(s) > avail.get(s, 0):
                return False
        return True

    def require_valid_solution(self, slots: Iterable[int]) -> Solution:
        sol = tuple(sorted(int(s) for s in slots))
        if not self.is_valid_solution(sol):
            raise ValidationError(f"not a feasible committee: {sol}")
        return sol


def _slot_distances(inst: Instance, point: int, slots: Solution) -> np.ndarray:
    return inst.space.dist[point, list(slots)]


def client_cost(inst: Instance, point: int, slots: Solution, cost: ClientCost) -> float:
    """Cost of a single client point for a committee."""
    ds = _slot_distances(inst, point, slots)
    if cost.kind is CostKind.SUM:
        return float(ds.sum())
    if cost.kind is CostKind.MAX:
        return float(ds.max())
    if cost.kind is CostKind.MIN:
        return float(ds.min())
    if cost.q > len(slots):
        raise ValidationError(f"q={cost.q} exceeds committee size {len(slots)}")
    return float(np.sort(ds)[cost.q - 1])


def _client_cost_vector(inst: Instance, slots: Solution, cost: ClientCost) -> np.ndarray:
    d = inst.space.dist[np.ix_(inst.client_points, np.asarray(slots, dtype=np.int64))]
    if cost.kind is CostKind.SUM:
        return d.sum(axis=1)
    if cost.kind is CostKind.MAX:
        return d.max(axis=1)
    if cost.kind is CostKind.MIN:
        return d.min(axis=1)
    if cost.q > len(slots):
        raise ValidationError(f"q={cost.q} exceeds committee size {len(slots)}")
    return np.sort(d, axis=1)[:, cost.q - 1]


def weighted_top_sum(costs: np.ndarray, weights: np.ndarray, l: int) -> float:
    """Sum of the l largest entries after expanding each cost by its weight.

    The expansion is arithmetic: entries are consumed in descending cost
    order, each contributing min(weight, remaining) copies.
    """
    order = np.argsort(-costs, kind="stable")
    total = 0.0
    remaining = l
    for idx in order:
        take = min(int(weights[idx]), remaining)
        total += float(costs[idx]) * take
        remaining -= take
        if remaining == 0:
            break
    return total


def objective_value(inst: Instance, slots: Solution, spec: ObjectiveSpec) -> float:
    """Evaluate an objective on a committee.

    Clients are conceptually expanded by weight: sum aggregation multiplies
    by weight, centrum sums the top-l expanded costs, and max ignores
    weights entirely.
    """
    costs = _client_cost_vector(inst, slots, spec.client_cost)
    if spec.aggregator is Aggregator.MAX:
        return float(costs.max())
    if spec.aggregator is Aggregator.SUM:
        return float((costs * inst.weights).sum())
    if not 1 <= spec.l <= inst.total_weight:
        raise ValidationError(
            f"centrum level l={spec.l} outside [1, {inst.total_weight}]",
            code="L_OUT_OF_RANGE",
        )
    return weighted_top_sum(costs, inst.weights, spec.l)


def set_pair_distance(space: MetricSpace, a: Iterable[int], b: Iterable[int]) -> float:
    """Sum of distances over all ordered pairs of two point multisets."""
    a = list(a)
    b = list(b)
    if not a or not b:
        raise ValidationError("set pair distance needs nonempty multisets", code="EMPTY_SET")
    return float(space.dist[np.ix_(a, b)].sum())
