"""Property-verification harness over seeded random and fixed instances.

One battery of named checks runs per instance: the global 3-approximation
of the sum-sum optimum, the selector bounds for each objective pair, the
ratio-product identities, the cross-optimum bound for each supported client
cost, the overlap and witness inequalities, fast-path/brute-force oracle
equivalence, and (optionally) election distortion.  The fixed lower-bound
families are checked against their closed-form limits.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import bounds
from .compat import (
    BOUND_TOL,
    OptimaCache,
    best_simultaneous,
    check_theorem,
    duality_stats,
    exhaustive_best_simultaneous,
    ratio_report,
    safe_ratio,
)
from .families import Family, FamilySpec, generate
from .metric import validate_metric
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
    cost_q_social,
    objective_value,
)
from .reduction import build_committee_metric, check_cost_triangle_property
from .solvers import (
    brute_force_optimum,
    count_solutions,
    max_max_fast,
    sum_sum_fast,
)
from .voting import induced_profile, plurality_veto, realized_distortion

LIMIT_TOL = 1e-4  # tolerance against closed-form limits at n = 10**6
LIMIT_N = 10**6


@dataclass(frozen=True)
class CheckRecord:
    check: str
    passed: bool
    slack: float
    instance_label: str = ""
    detail: str = ""


@dataclass
class VerifyReport:
    records: list[CheckRecord] = field(default_factory=list)
    failures: list[tuple[CheckRecord, Optional[Instance]]] = field(default_factory=list)

    def add(self, record: CheckRecord, inst: Optional[Instance] = None) -> None:
        self.records.append(record)
        if not record.passed:
            self.failures.append((record, inst))

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> list[tuple[str, int, int, float]]:
        """Per-check (name, runs, passes, worst slack)."""
        by_name: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            by_name.setdefault(r.check, []).append(r)
        out = []
        for name in sorted(by_name):
            rs = by_name[name]
            out.append((name, len(rs), sum(r.passed for r in rs),
                        min(r.slack for r in rs)))
        return out


def random_family_spec(seed: int, *, max_points: int = 8, weight_cap: int = 12,
                       k_max: int = 5) -> FamilySpec:
    """Deterministic mixed-family spec used by the random suites."""
    rng = random.Random(seed)
    family = Family.RANDOM_EUCLIDEAN if rng.random() < 0.5 else Family.RANDOM_METRIC
    points = rng.randint(4, max_points)
    n = rng.randint(2, weight_cap)
    return FamilySpec(family=family, n=n, k=None, seed=seed, points=points)


def _record(name: str, slack: float, label: str, tol: float,
            detail: str = "") -> CheckRecord:
    return CheckRecord(check=name, passed=slack >= -tol, slack=slack,
                       instance_label=label, detail=detail)


def property_checks(inst: Instance, label: str = "",
                    tol: float = BOUND_TOL) -> list[CheckRecord]:
    """The per-instance inequality battery (brute-force optima as oracle)."""
    cache = OptimaCache(inst)
    records: list[CheckRecord] = []
    k = inst.k

    # named single checks
    for check_id in ("sum-opt-all", "overlap-bound", "max-pair-product",
                     "sum-pair-product", "peak-slot-floor",
                     "peak-slot-witness", "set-pair-scaling"):
        res = check_theorem(inst, check_id, cache=cache)
        records.append(CheckRecord(check=check_id, passed=res.passed,
                                   slack=res.slack, instance_label=label))

    # cross-optimum bound for each supported client cost
    for cost in (ClientCost(CostKind.SUM), ClientCost(CostKind.MAX),
                 cost_q_social(k // 2 + 1)):
        res = check_theorem(inst, "cross-opt-bound", cost=cost, cache=cache)
        records.append(CheckRecord(check=f"cross-opt-bound[{cost.name()}]",
                                   passed=res.passed, slack=res.slack,
                                   instance_label=label))

    # selector bound for the sum pair: the three-candidate selector beats
    # the stitched-committee guarantee
    best = best_simultaneous(inst, (SUM_SUM, MAX_SUM), cache=cache)
    limit = bounds.pair_bound((SUM_SUM, MAX_SUM), k=k)
    records.append(_record("selector-sum-pair", limit - best.simultaneous,
                           label, tol, detail=f"k={k}"))

    # selector bound for the max-cost pair
    a_sm_mm = safe_ratio(
        objective_value(inst, cache.get_opt(MAX_MAX).solution, SUM_MAX),
        cache.get_opt(SUM_MAX).value)
    a_mm_sm = safe_ratio(
        objective_value(inst, cache.get_opt(SUM_MAX).solution, MAX_MAX),
        cache.get_opt(MAX_MAX).value)
    records.append(_record("selector-max-pair",
                           bounds.TWO_OPT_SELECTOR_BOUND - min(a_sm_mm, a_mm_sm),
                           label, tol))

    # duality-based bound for max-max vs max-sum
    a_ms_mm = safe_ratio(
        objective_value(inst, cache.get_opt(MAX_MAX).solution, MAX_SUM),
        cache.get_opt(MAX_SUM).value)
    a_mm_ms = safe_ratio(
        objective_value(inst, cache.get_opt(MAX_SUM).solution, MAX_MAX),
        cache.get_opt(MAX_MAX).value)
    stats = duality_stats(inst, cache=cache)
    limit = bounds.pair_bound((MAX_MAX, MAX_SUM), k1=stats.k1, k2=stats.k2)
    records.append(_record("duality-max-pair", limit - min(a_ms_mm, a_mm_ms),
                           label, tol))

    # root-k bound for sum-sum vs sum-max
    a_ss_sm = safe_ratio(
        objective_value(inst, cache.get_opt(SUM_MAX).solution, SUM_SUM),
        cache.get_opt(SUM_SUM).value)
    a_sm_ss = safe_ratio(
        objective_value(inst, cache.get_opt(SUM_SUM).solution, SUM_MAX),
        cache.get_opt(SUM_MAX).value)
    records.append(_record("root-k-sum-pair",
                           math.sqrt(k) - min(a_ss_sm, a_sm_ss), label, tol))

    # fast paths agree with brute force, value and solution
    for name, fast in (("oracle-sum-sum", sum_sum_fast),
                       ("oracle-max-max", max_max_fast)):
        spec = SUM_SUM if name == "oracle-sum-sum" else MAX_MAX
        fast_res = fast(inst)
        brute_res = brute_force_optimum(inst, spec)
        same = (fast_res.value == brute_res.value
                and fast_res.solution == brute_res.solution)
        records.append(CheckRecord(
            check=name, passed=same,
            slack=0.0 if same else -abs(fast_res.value - brute_res.value),
            instance_label=label,
            detail=f"fast={fast_res.solution} brute={brute_res.solution}"))

    # the selector never loses to either single optimum
    for spec_pair in ((SUM_SUM, MAX_SUM), (SUM_MAX, MAX_MAX)):
        best = best_simultaneous(inst, spec_pair, cache=cache)
        for opt_spec in spec_pair:
            rep = ratio_report(inst, cache.get_opt(opt_spec).solution,
                               spec_pair, cache=cache)
            records.append(_record("selector-dominates",
                                   rep.simultaneous - best.simultaneous,
                                   label, tol))
    return records


def reduction_checks(inst: Instance, label: str = "",
                     committee_cap: int = 400) -> list[CheckRecord]:
    """Derived-space validity for costs satisfying the exchange inequality."""
    records: list[CheckRecord] = []
    if count_solutions(inst) > committee_cap:
        return records
    for cost in (ClientCost(CostKind.SUM), ClientCost(CostKind.MAX)):
        tri = check_cost_triangle_property(inst, cost, budget=20000)
        records.append(CheckRecord(
            check=f"triangle-property[{cost.name()}]", passed=tri.passed,
            slack=0.0 if tri.passed else -1.0, instance_label=label))
        derived = build_committee_metric(inst, cost, cap=committee_cap)
        check = validate_metric(derived.space)
        records.append(CheckRecord(
            check=f"derived-metric[{cost.name()}]", passed=check.ok,
            slack=0.0 if check.ok else -abs(check.violation.slack),
            instance_label=label,
            detail="" if check.ok else str(check.violation)))
    return records


def voting_checks(inst: Instance, label: str = "", seed: int = 0,
                  orders: int = 10, tol: float = BOUND_TOL) -> list[CheckRecord]:
    """Election distortion at most 3 for every centrum level and cost."""
    records: list[CheckRecord] = []
    n = inst.total_weight
    levels = sorted({1, math.ceil(n / 2), n})
    costs = [ClientCost(CostKind.SUM), ClientCost(CostKind.MAX),
             cost_q_social(inst.k // 2 + 1)]
    for cost in costs:
        profile = induced_profile(inst, cost)
        for trial in range(orders):
            order = list(range(n))
            random.Random(seed * 1000003 + trial).shuffle(order)
            transcript = plurality_veto(profile, order)
            winner = profile.committees[transcript.winner]

            # the certifying matching: a bijection under which every voter
            # weakly prefers the winner to the match's favorite
            ok_matching = sorted(transcript.matching) == list(range(n))
            for voter, r in enumerate(profile.rankings):
                fav = profile.rankings[transcript.matching[voter]][0]
                if r.index(transcript.winner) > r.index(fav):
                    ok_matching = False
            records.append(CheckRecord(
                check=f"veto-matching[{cost.name()}]", passed=ok_matching,
                slack=0.0 if ok_matching else -1.0, instance_label=label))

            for level in levels:
                spec = ObjectiveSpec(Aggregator.L_CENTRUM, cost, l=level)
                dist = realized_distortion(inst, winner, spec)
                slack = 3.0 - dist
                records.append(_record(f"distortion[{cost.name()}]", slack,
                                       label, tol, detail=f"l={level}"))
    return records


# closed-form limits for the fixed families: per-candidate ratios and the
# best achievable simultaneous ratio, all as n -> infinity
_SQRT2 = math.sqrt(2.0)
_SQRT7 = math.sqrt(7.0)


def lower_bound_cases() -> list[dict]:
    return [
        {
            "spec": FamilySpec(Family.FIG2, n=LIMIT_N),
            "pair": (SUM_SUM, MAX_SUM),
            "best": 1.0 + _SQRT2,
            "candidates": {
                (0, 1): (1.0 + _SQRT2, 1.0),
                (1, 2): (1.0, 1.0 + _SQRT2),
                (0, 2): (2.0 + _SQRT2, _SQRT2),
            },
        },
        {
            "spec": FamilySpec(Family.FIG3, n=LIMIT_N),
            "pair": (SUM_SUM, MAX_SUM),
            "best": (4.0 + _SQRT7) / 3.0,
            "candidates": {
                (1, 1, 1): (2.0 + _SQRT7, 1.0),
                (3, 3, 3): (1.0, (4.0 + _SQRT7) / 3.0),
                (1, 3, 3): ((4.0 + _SQRT7) / 3.0, (11.0 + 2.0 * _SQRT7) / 9.0),
                (1, 1, 3): ((5.0 + 2.0 * _SQRT7) / 3.0, (10.0 + _SQRT7) / 9.0),
            },
        },
        *[
            {
                "spec": FamilySpec(Family.FIG4, n=LIMIT_N, k=k),
                "pair": (SUM_MAX, MAX_MAX),
                "best": 1.0 + _SQRT2,
                "candidates": {
                    tuple([1] * k): (1.0 + _SQRT2, 1.0),
                    tuple([3] * k): (1.0, 1.0 + _SQRT2),
                },
            }
            for k in (2, 3, 5)
        ],
        {
            "spec": FamilySpec(Family.FIG5),
            "pair": (MAX_MAX, MAX_SUM),
            "best": _SQRT2,
            "candidates": {
                (0, 0): (1.0, _SQRT2),
                (1, 2): (_SQRT2, 1.0),
                (0, 1): (_SQRT2, 1.0 + _SQRT2 / 2.0),
                (0, 2): (_SQRT2, 1.0 + _SQRT2 / 2.0),
            },
        },
    ]


def lower_bound_checks(tol: float = LIMIT_TOL) -> list[CheckRecord]:
    """Reproduce each fixed family's limit ratios at n = 10**6."""
    records: list[CheckRecord] = []
    for case in lower_bound_cases():
        inst = generate(case["spec"])
        label = case["spec"].label()
        cache = OptimaCache(inst)
        best = exhaustive_best_simultaneous(inst, case["pair"], cache=cache)
        gap = abs(best.simultaneous - case["best"])
        records.append(_record("family-best-simultaneous", tol - gap, label, 0.0,
                               detail=f"got {best.simultaneous:.6f}"))
        for cand, (limit_1, limit_2) in case["candidates"].items():
            rep = ratio_report(inst, cand, case["pair"], cache=cache)
            gap = max(abs(rep.alpha_1 - limit_1), abs(rep.alpha_2 - limit_2))
            records.append(_record("family-candidate-ratios", tol - gap, label,
                                   0.0, detail=f"candidate={cand}"))
    return records


def scan_checks(resolution: int = 10**6, tol: float = LIMIT_TOL) -> list[CheckRecord]:
    """Numeric envelope maxima match their closed forms."""
    records = []
    even = bounds.scan_envelope_max(bounds.even_split_envelope, resolution)
    odd = bounds.scan_envelope_max(bounds.odd_split_envelope, resolution)
    records.append(_record("scan-even-split", tol - abs(even - bounds.EVEN_SPLIT_BOUND),
                           "", 0.0, detail=f"got {even:.6f}"))
    records.append(_record("scan-odd-split", tol - abs(odd - bounds.ODD_SPLIT_BOUND),
                           "", 0.0, detail=f"got {odd:.6f}"))
    half = bounds.overlap_split_bound(0.5)
    records.append(_record("overlap-split-at-half", 0.0 if half == 2.0 else -1.0,
                           "", 0.0, detail=f"got {half}"))
    return records


def run_verify(trials: int, seed: int, suite: str = "random",
               tol: float = BOUND_TOL, include_voting: bool = True,
               include_reduction: bool = True) -> VerifyReport:
    """Run a verification suite; ``suite`` is random, lower-bounds, or all."""
    report = VerifyReport()
    if suite in ("lower-bounds", "all"):
        for rec in lower_bound_checks():
            report.add(rec)
        for rec in scan_checks():
            report.add(rec)
    if suite in ("random", "all"):
        rng = random.Random(seed)
        for trial in range(trials):
            inst_seed = rng.randrange(2**62)
            spec = random_family_spec(inst_seed)
            inst = generate(spec)
            label = spec.label()
            for rec in property_checks(inst, label, tol):
                report.add(rec, inst)
            if include_reduction and trial % 10 == 0:
                for rec in reduction_checks(inst, label):
                    report.add(rec, inst)
            if include_voting and trial % 10 == 0:
                for rec in voting_checks(inst, label, seed=inst_seed,
                                         orders=3, tol=tol):
                    report.add(rec, inst)
    return report


VERIFY_CSV_HEADER = ("suite", "instance", "check", "passed", "slack", "detail")


def verify_csv_rows(report: VerifyReport, suite: str) -> Iterable[tuple]:
    for r in report.records:
        yield (suite, r.instance_label, r.check, int(r.passed),
               f"{r.slack:.12g}", r.detail)
