"""Simultaneous-approximation machinery.

Everything here is phrased over a pair of objectives: per-objective ratios
against the exact optima, the stitched committee built from the overlap of
the two optima plus the cheapest halves of their remainders, the best-of-
candidates selector, and the named inequality checks that the verification
harness runs on every instance.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError
from .objectives import (
    MAX_MAX,
    MAX_SUM,
    SUM_MAX,
    SUM_SUM,
    Aggregator,
    ClientCost,
    CostKind,
    Instance,
    ObjectiveSpec,
    Solution,
    objective_value,
    set_pair_distance,
)
from .solvers import (
    DEFAULT_ENUM_CAP,
    OptResult,
    enumerate_solutions,
    optimum,
    weighted_column_sums,
)

Pair = tuple[ObjectiveSpec, ObjectiveSpec]

# Additive slack allowed when comparing a measured ratio against a proven
# bound; ratios are O(1) so an absolute tolerance is appropriate.
BOUND_TOL = 1e-9


def safe_ratio(num: float, den: float) -> float:
    """num/den with the 0/0 -> 1 convention (an optimum of zero can only be
    matched, and a zero-cost candidate matches it)."""
    if den == 0.0:
        return 1.0 if num == 0.0 else math.inf
    return num / den


class OptimaCache(dict):
    """Memo of optima per objective, shared across checks on one instance."""

    def __init__(self, inst: Instance, cap: int = DEFAULT_ENUM_CAP):
        super().__init__()
        self.inst = inst
        self.cap = cap

    def get_opt(self, spec: ObjectiveSpec) -> OptResult:
        if spec not in self:
            self[spec] = optimum(self.inst, spec, cap=self.cap)
        return self[spec]


@dataclass(frozen=True)
class RatioReport:
    """Per-objective ratios of one candidate committee against both optima."""

    pair: Pair
    candidate: Solution
    alpha_1: float
    alpha_2: float
    opt_1: OptResult
    opt_2: OptResult

    @property
    def simultaneous(self) -> float:
        return max(self.alpha_1, self.alpha_2)


def ratio_report(inst: Instance, candidate: Solution, pair: Pair,
                 cap: int = DEFAULT_ENUM_CAP,
                 cache: Optional[OptimaCache] = None) -> RatioReport:
    candidate = inst.require_valid_solution(candidate)
    cache = cache or OptimaCache(inst, cap)
    opt_1 = cache.get_opt(pair[0])
    opt_2 = cache.get_opt(pair[1])
    return RatioReport(
        pair=pair,
        candidate=candidate,
        alpha_1=safe_ratio(objective_value(inst, candidate, pair[0]), opt_1.value),
        alpha_2=safe_ratio(objective_value(inst, candidate, pair[1]), opt_2.value),
        opt_1=opt_1,
        opt_2=opt_2,
    )


def _multiset_min(a: Solution, b: Solution) -> Solution:
    ca, cb = Counter(a), Counter(b)
    out: list[int] = []
    for p in sorted(set(ca) & set(cb)):
        out.extend([p] * min(ca[p], cb[p]))
    return tuple(out)


def _multiset_diff(a: Solution, b: Solution) -> Solution:
    c = Counter(a) - Counter(b)
    return tuple(sorted(c.elements()))


@dataclass(frozen=True)
class StitchPlan:
    """Stitched committee: overlap of the two optima plus the cheapest
    (lowest weighted column sum) parts of each optimum's remainder.

    For r non-shared slots the max-sum side contributes floor(r/2) slots
    when r is even and (r-1)/2 when odd; the sum-sum side takes the rest,
    so the stitched committee always has exactly k slots.
    """

    overlap: Solution
    k_prime: int
    q_ms: Solution
    q_ss: Solution
    r_ms: Solution
    r_ss: Solution
    stitched: Solution


def _cheapest_sub_multiset(inst: Instance, pool: Solution, size: int) -> Solution:
    sums = dict(zip((int(p) for p in inst.facility_points),
                    map(float, weighted_column_sums(inst))))
    ranked = sorted(pool, key=lambda p: (sums[p], p))
    return tuple(sorted(ranked[:size]))


def stitch(inst: Instance, cap: int = DEFAULT_ENUM_CAP,
           cache: Optional[OptimaCache] = None) -> StitchPlan:
    """Build the stitched committee for the (sum-sum, max-sum) pair."""
    cache = cache or OptimaCache(inst, cap)
    o_ms = cache.get_opt(MAX_SUM).solution
    o_ss = cache.get_opt(SUM_SUM).solution
    overlap = _multiset_min(o_ms, o_ss)
    k_prime = inst.k - len(overlap)
    r_ms_pool = _multiset_diff(o_ms, overlap)
    r_ss_pool = _multiset_diff(o_ss, overlap)
    n_ms = k_prime // 2 if k_prime % 2 == 0 else (k_prime - 1) // 2
    n_ss = k_prime - n_ms
    q_ms = _cheapest_sub_multiset(inst, r_ms_pool, n_ms)
    q_ss = _cheapest_sub_multiset(inst, r_ss_pool, n_ss)
    stitched = tuple(sorted(overlap + q_ms + q_ss))
    return StitchPlan(
        overlap=overlap,
        k_prime=k_prime,
        q_ms=q_ms,
        q_ss=q_ss,
        r_ms=_multiset_diff(r_ms_pool, q_ms),
        r_ss=_multiset_diff(r_ss_pool, q_ss),
        stitched=stitched,
    )


def _is_sum_sum_max_sum(pair: Pair) -> bool:
    return {pair[0], pair[1]} == {SUM_SUM, MAX_SUM}


def best_simultaneous(inst: Instance, pair: Pair, cap: int = DEFAULT_ENUM_CAP,
                      cache: Optional[OptimaCache] = None) -> RatioReport:
    """Best candidate among both optima, plus the stitched committee for the
    (sum-sum, max-sum) pair.  Ties keep the earlier candidate."""
    cache = cache or OptimaCache(inst, cap)
    candidates = [cache.get_opt(pair[0]).solution, cache.get_opt(pair[1]).solution]
    if _is_sum_sum_max_sum(pair):
        candidates.append(stitch(inst, cap=cap, cache=cache).stitched)
    best: Optional[RatioReport] = None
    for cand in candidates:
        rep = ratio_report(inst, cand, pair, cap=cap, cache=cache)
        if best is None or rep.simultaneous < best.simultaneous:
            best = rep
    return best


def exhaustive_best_simultaneous(inst: Instance, pair: Pair,
                                 cap: int = DEFAULT_ENUM_CAP,
                                 cache: Optional[OptimaCache] = None) -> RatioReport:
    """Minimize the simultaneous ratio over every feasible committee.

    An oracle for the selector above and the quantity lower-bound instances
    pin down; first lexicographic minimizer wins ties.
    """
    cache = cache or OptimaCache(inst, cap)
    best: Optional[RatioReport] = None
    for cand in enumerate_solutions(inst, cap=cap):
        rep = ratio_report(inst, cand, pair, cap=cap, cache=cache)
        if best is None or rep.simultaneous < best.simultaneous:
            best = rep
    return best


@dataclass(frozen=True)
class DualityStats:
    """Ratios between the max-sum and max-max values of the two max-side
    optima, with the (client, slot) witnesses attaining each max-max."""

    k1: float
    k2: float
    witness_i_star: int
    witness_b_star: int
    witness_j_star: int
    witness_a_star: int


def _peak_pair(inst: Instance, slots: Solution) -> tuple[int, int, float]:
    """Client point and slot attaining the max-max value over a committee."""
    best = (-1.0, 0, 0)
    for pt in inst.client_points:
        for s in slots:
            d = float(inst.space.dist[pt, s])
            if d > best[0]:
                best = (d, int(pt), int(s))
    return best[1], best[2], best[0]


def duality_stats(inst: Instance, cap: int = DEFAULT_ENUM_CAP,
                  cache: Optional[OptimaCache] = None) -> DualityStats:
    cache = cache or OptimaCache(inst, cap)
    o_ms = cache.get_opt(MAX_SUM).solution
    o_mm = cache.get_opt(MAX_MAX).solution
    i_star, b_star, _ = _peak_pair(inst, o_ms)
    j_star, a_star, _ = _peak_pair(inst, o_mm)
    k1 = safe_ratio(objective_value(inst, o_ms, MAX_SUM),
                    objective_value(inst, o_ms, MAX_MAX))
    k2 = safe_ratio(objective_value(inst, o_mm, MAX_SUM),
                    objective_value(inst, o_mm, MAX_MAX))
    return DualityStats(k1=k1, k2=k2, witness_i_star=i_star,
                        witness_b_star=b_star, witness_j_star=j_star,
                        witness_a_star=a_star)


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of one named inequality or identity on one instance.

    For inequalities lhs <= rhs the slack is rhs - lhs (negative means
    violated); identities use -(|lhs - rhs|) so nonnegative-up-to-tolerance
    means the identity holds.
    """

    check_id: str
    passed: bool
    slack: float
    details: dict = field(default_factory=dict)


# check ids understood by check_theorem
CHECK_IDS = (
    "cross-opt-bound",      # alpha_max(O_sum) <= 1/alpha_sum(O_max) + 2
    "sum-opt-sum-max",      # sum-sum optimum is a 3-approx for sum-max
    "sum-opt-max-max",      # sum-sum optimum is a 3-approx for max-max
    "sum-opt-all",          # sum-sum optimum is a 3-approx for all three
    "overlap-bound",        # alpha_ms(O_ss) <= 1 + r/(k-r) + max(1, r/(k-r))/alpha_ss(O_ms)
    "max-pair-product",     # alpha_ms(O_mm) * alpha_mm(O_ms) == k2/k1
    "sum-pair-product",     # alpha_ss(O_sm) * alpha_sm(O_ss) <= k
    "peak-slot-floor",      # (k-2) d(j, b*) >= (k - 2 k1) d(i*, b*) for all j
    "peak-slot-witness",    # unused facility a: some client j has d(j,b*) <= d(j,a)
    "set-pair-scaling",     # f(A,B) <= |B|/|C| f(A,C) + |A|/|C| f(B,C), sampled
)


def _check_cross_opt_bound(inst: Instance, cost: ClientCost,
                           cache: OptimaCache) -> TheoremCheck:
    spec_sum = ObjectiveSpec(Aggregator.SUM, cost)
    spec_max = ObjectiveSpec(Aggregator.MAX, cost)
    o_sum = cache.get_opt(spec_sum)
    o_max = cache.get_opt(spec_max)
    alpha_max_of_sum_opt = safe_ratio(
        objective_value(inst, o_sum.solution, spec_max), o_max.value)
    alpha_sum_of_max_opt = safe_ratio(
        objective_value(inst, o_max.solution, spec_sum), o_sum.value)
    if math.isinf(alpha_sum_of_max_opt):
        rhs = 2.0
    else:
        rhs = 1.0 / alpha_sum_of_max_opt + 2.0
    slack = rhs - alpha_max_of_sum_opt
    return TheoremCheck("cross-opt-bound", slack >= -BOUND_TOL, slack,
                        {"cost": cost.name(), "lhs": alpha_max_of_sum_opt,
                         "rhs": rhs})


def check_theorem(inst: Instance, check_id: str, *,
                  cost: Optional[ClientCost] = None,
                  cap: int = DEFAULT_ENUM_CAP,
                  cache: Optional[OptimaCache] = None,
                  seed: int = 0) -> TheoremCheck:
    """Evaluate a named inequality or identity on an instance.

    ``cost`` selects the per-client cost for cross-opt-bound (default sum);
    ``seed`` drives the sampling of set-pair-scaling."""
    cache = cache or OptimaCache(inst, cap)
    if check_id == "cross-opt-bound":
        return _check_cross_opt_bound(inst, cost or ClientCost(CostKind.SUM),
                                      cache)

    if check_id in ("sum-opt-sum-max", "sum-opt-max-max", "sum-opt-all"):
        o_ss = cache.get_opt(SUM_SUM).solution
        alphas = {}
        for name, spec in (("max-sum", MAX_SUM), ("sum-max", SUM_MAX),
                           ("max-max", MAX_MAX)):
            alphas[name] = safe_ratio(objective_value(inst, o_ss, spec),
                                      cache.get_opt(spec).value)
        if check_id == "sum-opt-sum-max":
            lhs = alphas["sum-max"]
        elif check_id == "sum-opt-max-max":
            lhs = alphas["max-max"]
        else:
            lhs = max(alphas.values())
        slack = 3.0 - lhs
        return TheoremCheck(check_id, slack >= -BOUND_TOL, slack, alphas)

    if check_id == "overlap-bound":
        o_ms = cache.get_opt(MAX_SUM)
        o_ss = cache.get_opt(SUM_SUM)
        overlap = _multiset_min(o_ms.solution, o_ss.solution)
        k_prime = inst.k - len(overlap)
        alpha_ms = safe_ratio(objective_value(inst, o_ss.solution, MAX_SUM),
                              o_ms.value)
        if k_prime == inst.k:
            # no shared slot: the bound's ratio r/(k-r) diverges, so the
            # inequality is vacuous
            return TheoremCheck(check_id, True, math.inf,
                                {"k_prime": k_prime, "vacuous": True})
        alpha_ss = safe_ratio(objective_value(inst, o_ms.solution, SUM_SUM),
                              o_ss.value)
        ratio = k_prime / (inst.k - k_prime)
        rhs = 1.0 + ratio + max(1.0, ratio) * (0.0 if math.isinf(alpha_ss)
                                               else 1.0 / alpha_ss)
        slack = rhs - alpha_ms
        return TheoremCheck(check_id, slack >= -BOUND_TOL, slack,
                            {"k_prime": k_prime, "lhs": alpha_ms, "rhs": rhs})

    if check_id == "max-pair-product":
        stats = duality_stats(inst, cap=cap, cache=cache)
        o_ms = cache.get_opt(MAX_SUM)
        o_mm = cache.get_opt(MAX_MAX)
        product = (safe_ratio(objective_value(inst, o_mm.solution, MAX_SUM),
                              o_ms.value)
                   * safe_ratio(objective_value(inst, o_ms.solution, MAX_MAX),
                                o_mm.value))
        expected = safe_ratio(stats.k2, stats.k1)
        if math.isinf(product) or math.isinf(expected):
            gap = 0.0 if product == expected else math.inf
        else:
            gap = abs(product - expected)
        return TheoremCheck(check_id, gap <= BOUND_TOL, -gap,
                            {"product": product, "k2_over_k1": expected})

    if check_id == "sum-pair-product":
        o_sm = cache.get_opt(SUM_MAX)
        o_ss = cache.get_opt(SUM_SUM)
        product = (safe_ratio(objective_value(inst, o_sm.solution, SUM_SUM),
                              o_ss.value)
                   * safe_ratio(objective_value(inst, o_ss.solution, SUM_MAX),
                                o_sm.value))
        slack = inst.k - product
        return TheoremCheck(check_id, slack >= -BOUND_TOL, slack,
                            {"product": product, "k": inst.k})

    if check_id == "peak-slot-floor":
        stats = duality_stats(inst, cap=cap, cache=cache)
        d = inst.space.dist
        base = float(d[stats.witness_i_star, stats.witness_b_star])
        rhs = (inst.k - 2.0 * stats.k1) * base
        slack = min(
            (inst.k - 2.0) * float(d[pt, stats.witness_b_star]) - rhs
            for pt in inst.client_points
        )
        return TheoremCheck(check_id, slack >= -BOUND_TOL, slack,
                            {"k1": stats.k1, "b_star": stats.witness_b_star})

    if check_id == "peak-slot-witness":
        stats = duality_stats(inst, cap=cap, cache=cache)
        o_ms = cache.get_opt(MAX_SUM).solution
        used = set(o_ms)
        d = inst.space.dist
        worst = math.inf
        for p in inst.facility_points:
            p = int(p)
            if p in used:
                continue
            margin = max(float(d[pt, p]) - float(d[pt, stats.witness_b_star])
                         for pt in inst.client_points)
            worst = min(worst, margin)
        if math.isinf(worst):  # every facility point is used
            return TheoremCheck(check_id, True, math.inf, {"vacuous": True})
        return TheoremCheck(check_id, worst >= -BOUND_TOL, worst,
                            {"b_star": stats.witness_b_star})

    if check_id == "set-pair-scaling":
        rng = random.Random(seed)
        n = inst.space.point_count
        worst = math.inf
        for _ in range(64):
            a = [rng.randrange(n) for _ in range(rng.randint(1, 4))]
            b = [rng.randrange(n) for _ in range(rng.randint(1, 4))]
            c = [rng.randrange(n) for _ in range(rng.randint(1, 4))]
            lhs = set_pair_distance(inst.space, a, b)
            rhs = (len(b) / len(c) * set_pair_distance(inst.space, a, c)
                   + len(a) / len(c) * set_pair_distance(inst.space, b, c))
            worst = min(worst, rhs - lhs)
        return TheoremCheck(check_id, worst >= -BOUND_TOL, worst, {})

    raise ValidationError(f"unknown check id {check_id!r}", code="UNKNOWN_THEOREM")
