"""Exact optimum computation for every objective.

Sum-sum and max-max have polynomial fast paths (per-facility column sums
and eccentricities respectively); everything else is brute force over all
feasible committees.  All paths share one tie-break rule: among optimal
committees, the lexicographically smallest sorted slot tuple wins, where
the sum-sum paths order slots by (column sum, point id) so that the greedy
selection and the enumeration scan agree even on committees tied below
float resolution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .errors import CapExceeded, ValidationError
from .objectives import (
    MAX_MAX,
    SUM_SUM,
    Aggregator,
    ClientCost,
    CostKind,
    Instance,
    ObjectiveSpec,
    Solution,
    objective_value,
)

DEFAULT_ENUM_CAP = 10**6


class Method(enum.Enum):
    FAST_COLUMN_SUM = "FAST_COLUMN_SUM"
    FAST_MAX_COLUMN = "FAST_MAX_COLUMN"
    BRUTE_FORCE = "BRUTE_FORCE"


@dataclass(frozen=True)
class OptResult:
    """An optimum committee with its objective value and the path that found it.

    The value is always recomputed from the solution via
    :func:`objective_value`, never trusted from the search.
    """

    solution: Solution
    value: float
    method: Method

    @classmethod
    def build(cls, inst: Instance, spec: ObjectiveSpec, solution: Solution,
              method: Method) -> "OptResult":
        return cls(solution=solution, value=objective_value(inst, solution, spec),
                   method=method)


def count_solutions(inst: Instance) -> int:
    """Number of distinct size-k multisets of the facility multiset."""
    mults = [m for _, m in inst.facilities]
    coeffs = [1]
    for m in mults:
        new = [0] * min(len(coeffs) + m, inst.k + 1)
        for deg, c in enumerate(coeffs):
            for take in range(0, m + 1):
                if deg + take <= inst.k:
                    new[deg + take] += c
        coeffs = new
    return coeffs[inst.k] if inst.k < len(coeffs) else 0


def enumerate_solutions(inst: Instance, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Solution]:
    """Yield every feasible committee in lexicographic slot-tuple order."""
    total = count_solutions(inst)
    if total > cap:
        raise CapExceeded(f"{total} committees exceed the cap of {cap}")
    points = [p for p, _ in inst.facilities]
    mults = [m for _, m in inst.facilities]
    nf = len(points)
    suffix = [0] * (nf + 1)
    for j in range(nf - 1, -1, -1):
        suffix[j] = suffix[j + 1] + mults[j]

    slots: list[int] = []

    def rec(j: int, remaining: int) -> Iterator[Solution]:
        if remaining == 0:
            yield tuple(slots)
            return
        if j == nf:
            return
        hi = min(mults[j], remaining)
        lo = max(0, remaining - suffix[j + 1])
        for c in range(hi, lo - 1, -1):
            slots.extend([points[j]] * c)
            yield from rec(j + 1, remaining - c)
            del slots[len(slots) - c:]

    yield from rec(0, inst.k)


def _counts_to_solution(inst: Instance, counts) -> Solution:
    slots: list[int] = []
    for point, c in zip(inst.facility_points, counts):
        slots.extend([int(point)] * int(c))
    return tuple(slots)


_AGG_CODE = {Aggregator.MAX: kernels.AGG_MAX, Aggregator.SUM: kernels.AGG_SUM,
             Aggregator.L_CENTRUM: kernels.AGG_CENTRUM}
_COST_CODE = {CostKind.SUM: kernels.COST_SUM, CostKind.MAX: kernels.COST_MAX,
              CostKind.Q_SOCIAL: kernels.COST_QSOC}


def _validate_spec(inst: Instance, spec: ObjectiveSpec) -> None:
    cost = spec.client_cost
    if cost.kind is CostKind.Q_SOCIAL and cost.q > inst.k:
        raise ValidationError(f"q={cost.q} exceeds committee size k={inst.k}")
    if spec.aggregator is Aggregator.L_CENTRUM and not 1 <= spec.l <= inst.total_weight:
        raise ValidationError(
            f"centrum level l={spec.l} outside [1, {inst.total_weight}]",
            code="L_OUT_OF_RANGE",
        )


def scan_client_optimum(dist_row: np.ndarray, inst: Instance, cost: ClientCost,
                        cap: int = DEFAULT_ENUM_CAP) -> tuple[float, Solution]:
    """Committee minimizing one client's cost, given that client's distance row.

    Shares the brute-force kernel (a single-row scan with max aggregation).
    """
    total = count_solutions(inst)
    if total > cap:
        raise CapExceeded(f"{total} committees exceed the cap of {cap}")
    value, counts = kernels.scan_optimum(
        dist_row.reshape(1, -1), np.ones(1), inst.facility_mults, inst.k,
        kernels.AGG_MAX, None, _COST_CODE[cost.kind], cost.q,
    )
    return value, _counts_to_solution(inst, counts)


def brute_force_optimum(inst: Instance, spec: ObjectiveSpec,
                        cap: int = DEFAULT_ENUM_CAP) -> OptResult:
    """Scan every feasible committee; first lexicographic minimizer wins."""
    _validate_spec(inst, spec)
    total = count_solutions(inst)
    if total > cap:
        raise CapExceeded(f"{total} committees exceed the cap of {cap}")
    _, counts = kernels.scan_optimum(
        inst.client_facility_dist, inst.weights, inst.facility_mults, inst.k,
        _AGG_CODE[spec.aggregator], spec.l, _COST_CODE[spec.client_cost.kind],
        spec.client_cost.q,
    )
    return OptResult.build(inst, spec, _counts_to_solution(inst, counts),
                           Method.BRUTE_FORCE)


def weighted_column_sums(inst: Instance) -> np.ndarray:
    """Per-facility-point weighted sum of client distances.

    Computed by the same kernel routine the brute-force scan uses, so the
    fast path and the scan rank tied committees through identical floats.
    """
    return np.asarray(
        kernels.column_sums(inst.client_facility_dist, inst.weights))


def sum_sum_fast(inst: Instance) -> OptResult:
    """Sum-sum optimum: the objective separates into per-slot column sums,
    so the k cheapest slots (ties by point id) are optimal."""
    sums = weighted_column_sums(inst)
    ranked = sorted(
        (float(sums[idx]), int(p))
        for idx, p in enumerate(inst.facility_points)
    )
    slots: list[int] = []
    for s, p in ranked:
        take = min(inst.multiplicity(p), inst.k - len(slots))
        slots.extend([p] * take)
        if len(slots) == inst.k:
            break
    return OptResult.build(inst, SUM_SUM, tuple(sorted(slots)),
                           Method.FAST_COLUMN_SUM)


def eccentricities(inst: Instance) -> np.ndarray:
    """Per-facility-point maximum distance to any client point (unweighted)."""
    return inst.client_facility_dist.max(axis=0)


def max_max_fast(inst: Instance) -> OptResult:
    """Max-max optimum: the value is the k-th smallest slot eccentricity;
    the lexicographically smallest committee within that radius wins."""
    ecc = eccentricities(inst)
    expanded = sorted(
        (float(ecc[idx]), int(p))
        for idx, p in enumerate(inst.facility_points)
        for _ in range(int(inst.facility_mults[idx]))
    )
    radius = expanded[inst.k - 1][0]
    slots: list[int] = []
    for idx, p in enumerate(inst.facility_points):
        if float(ecc[idx]) <= radius:
            take = min(int(inst.facility_mults[idx]), inst.k - len(slots))
            slots.extend([int(p)] * take)
            if len(slots) == inst.k:
                break
    return OptResult.build(inst, MAX_MAX, tuple(slots), Method.FAST_MAX_COLUMN)


def optimum(inst: Instance, spec: ObjectiveSpec, cap: int = DEFAULT_ENUM_CAP) -> OptResult:
    """Exact minimizer for an objective.

    Dispatches to the fast paths for sum-sum and max-max; centrum and
    q-social objectives always go through brute force.
    """
    _validate_spec(inst, spec)
    if spec == SUM_SUM:
        return sum_sum_fast(inst)
    if spec == MAX_MAX:
        return max_max_fast(inst)
    return brute_force_optimum(inst, spec, cap=cap)
