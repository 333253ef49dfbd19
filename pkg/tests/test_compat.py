import itertools
import math

import pytest

from conftest import naive_objective, naive_optimum, random_instance
from multifac.compat import (
    OptimaCache,
    best_simultaneous,
    check_theorem,
    duality_stats,
    exhaustive_best_simultaneous,
    ratio_report,
    safe_ratio,
    stitch,
)
from multifac.errors import ValidationError
from multifac.families import Family, FamilySpec, generate
from multifac.metric import MetricSpace
from multifac.objectives import (
    COST_MAX,
    MAX_MAX,
    MAX_SUM,
    SUM_MAX,
    SUM_SUM,
    Instance,
    objective_value,
)
from multifac.solvers import enumerate_solutions, optimum

SQRT2 = math.sqrt(2.0)
SQRT7 = math.sqrt(7.0)


def test_ratio_report_on_triangle_family(fig5):
    rep = ratio_report(fig5, (0, 0), (MAX_SUM, MAX_MAX))
    assert rep.alpha_1 == pytest.approx(SQRT2)
    assert rep.alpha_2 == pytest.approx(1.0)
    assert rep.simultaneous == pytest.approx(SQRT2)


def test_ratio_report_self_is_one(fig3):
    opt = optimum(fig3, MAX_SUM)
    rep = ratio_report(fig3, opt.solution, (MAX_SUM, SUM_SUM))
    assert rep.alpha_1 == pytest.approx(1.0)


def test_ratio_report_mixed_candidate_far_line():
    # one slot from the max-sum optimum plus two from the sum-sum optimum,
    # evaluated at large client weight; both ratios from direct evaluation
    n = 10 ** 6
    inst = generate(FamilySpec(Family.FIG3, n=n))
    rep = ratio_report(inst, (1, 3, 3), (SUM_SUM, MAX_SUM))
    expected_ss = ((2 * SQRT7 - 1) * n + 12) / (3 * ((SQRT7 - 2) * n + 6))
    assert rep.alpha_1 == pytest.approx(expected_ss, abs=1e-9)
    assert rep.alpha_1 == pytest.approx((4 + SQRT7) / 3, abs=1e-4)
    assert rep.alpha_2 == pytest.approx((11 + 2 * SQRT7) / 9, abs=1e-9)


def test_stitch_full_overlap():
    space = MetricSpace.from_coords([[0.0], [1.0]])
    inst = Instance(space=space, clients=((0, 1),), facilities=((0, 2),), k=2)
    plan = stitch(inst)
    assert plan.k_prime == 0
    assert plan.stitched == (0, 0)
    assert plan.q_ms == () and plan.q_ss == ()


def test_stitch_odd_disjoint_optima():
    inst = generate(FamilySpec(Family.FIG3, n=10 ** 6))
    plan = stitch(inst)
    assert plan.overlap == ()
    assert plan.k_prime == 3
    assert plan.q_ms == (1,)
    assert plan.q_ss == (3, 3)
    assert plan.stitched == (1, 3, 3)


def _disjoint_k4_instance():
    # light client at 0, heavy client at 2; one facility group just left of
    # the heavy client, another group past it.  The sum objective takes the
    # far group, the max objective the near one, with no shared slots.
    coords = [[0.0], [1.00], [1.01], [1.02], [1.03], [2.0],
              [2.4142], [2.4242], [2.4342], [2.4442]]
    space = MetricSpace.from_coords(coords)
    return Instance(space=space, clients=((0, 1), (5, 30)),
                    facilities=tuple((p, 1) for p in (1, 2, 3, 4, 6, 7, 8, 9)),
                    k=4)


def test_stitch_even_split_minimizes_column_sums():
    inst = _disjoint_k4_instance()
    plan = stitch(inst)
    assert plan.k_prime == 4
    assert len(plan.q_ms) == 2 and len(plan.q_ss) == 2

    def weighted_cost(slots):
        return sum(sum(w * float(inst.space.dist[p, s])
                       for p, w in inst.clients) for s in slots)

    cache = OptimaCache(inst)
    for q, source in ((plan.q_ms, cache.get_opt(MAX_SUM).solution),
                      (plan.q_ss, cache.get_opt(SUM_SUM).solution)):
        pool = list(source)
        for chosen in plan.overlap:
            pool.remove(chosen)
        best = min(weighted_cost(c) for c in itertools.combinations(pool, 2))
        assert weighted_cost(q) == pytest.approx(best)
    assert len(plan.stitched) == inst.k
    assert inst.is_valid_solution(plan.stitched)


def test_stitched_committee_always_feasible():
    for seed in range(30):
        inst = random_instance(seed)
        plan = stitch(inst)
        assert len(plan.stitched) == inst.k
        assert inst.is_valid_solution(plan.stitched)
        if plan.k_prime % 2 == 0:
            assert len(plan.q_ms) == len(plan.q_ss) == plan.k_prime // 2
        else:
            assert len(plan.q_ms) == (plan.k_prime - 1) // 2
            assert len(plan.q_ss) == (plan.k_prime + 1) // 2


def test_best_simultaneous_on_lower_bound_families():
    n = 10 ** 6
    fig3 = generate(FamilySpec(Family.FIG3, n=n))
    rep = best_simultaneous(fig3, (SUM_SUM, MAX_SUM))
    assert rep.simultaneous == pytest.approx((4 + SQRT7) / 3, abs=1e-4)
    # at finite n the stitched committee edges out the sum-sum optimum
    assert rep.candidate == (1, 3, 3)

    fig2 = generate(FamilySpec(Family.FIG2, n=n))
    rep = best_simultaneous(fig2, (SUM_SUM, MAX_SUM))
    assert rep.simultaneous == pytest.approx(1 + SQRT2, abs=1e-4)

    fig4 = generate(FamilySpec(Family.FIG4, n=n, k=3))
    rep = best_simultaneous(fig4, (SUM_MAX, MAX_MAX))
    assert rep.simultaneous == pytest.approx(1 + SQRT2, abs=1e-4)


def test_best_simultaneous_never_worse_than_either_optimum():
    for seed in range(15):
        inst = random_instance(seed)
        for pair in ((SUM_SUM, MAX_SUM), (SUM_MAX, MAX_MAX),
                     (MAX_MAX, MAX_SUM)):
            cache = OptimaCache(inst)
            best = best_simultaneous(inst, pair, cache=cache)
            for spec in pair:
                rep = ratio_report(inst, cache.get_opt(spec).solution, pair,
                                   cache=cache)
                assert best.simultaneous <= rep.simultaneous + 1e-12


def test_exhaustive_best_at_most_selector():
    for seed in range(10):
        inst = random_instance(seed)
        pair = (SUM_SUM, MAX_SUM)
        cache = OptimaCache(inst)
        ex = exhaustive_best_simultaneous(inst, pair, cache=cache)
        sel = best_simultaneous(inst, pair, cache=cache)
        assert ex.simultaneous <= sel.simultaneous + 1e-12


def test_duality_stats_degenerate_cases():
    space = MetricSpace.from_coords([[0.0], [1.0]])
    single = Instance(space=space, clients=((0, 1),), facilities=((1, 1),), k=1)
    stats = duality_stats(single)
    assert stats.k1 == pytest.approx(1.0)
    assert stats.k2 == pytest.approx(1.0)

    stacked = Instance(space=space, clients=((0, 1),), facilities=((1, 3),), k=3)
    stats = duality_stats(stacked)
    assert stats.k1 == pytest.approx(3.0)
    assert stats.k2 == pytest.approx(3.0)


def test_duality_stats_recomputed_independently():
    for seed in range(10):
        inst = random_instance(seed)
        stats = duality_stats(inst)
        o_ms, _ = naive_optimum(inst, MAX_SUM)
        k1 = safe_ratio(naive_objective(inst, o_ms, MAX_SUM),
                        naive_objective(inst, o_ms, MAX_MAX))
        assert stats.k1 == pytest.approx(k1, rel=1e-12)
        assert 1 - 1e-12 <= stats.k1 <= inst.k + 1e-12
        assert 1 - 1e-12 <= stats.k2 <= inst.k + 1e-12
        d = inst.space.dist
        assert float(d[stats.witness_i_star, stats.witness_b_star]) == \
            pytest.approx(naive_objective(inst, o_ms, MAX_MAX))


CHECKS_ALWAYS_PASS = (
    "sum-opt-sum-max", "sum-opt-max-max", "sum-opt-all", "overlap-bound",
    "max-pair-product", "sum-pair-product", "peak-slot-floor",
    "peak-slot-witness", "set-pair-scaling",
)


def test_check_theorem_battery_on_random_instances():
    for seed in range(25):
        inst = random_instance(seed)
        cache = OptimaCache(inst)
        for check_id in CHECKS_ALWAYS_PASS:
            res = check_theorem(inst, check_id, cache=cache)
            assert res.passed, (check_id, seed, res)
        res = check_theorem(inst, "cross-opt-bound", cache=cache)
        assert res.passed
        res = check_theorem(inst, "cross-opt-bound", cost=COST_MAX, cache=cache)
        assert res.passed


def test_max_pair_product_identity_tight():
    for seed in range(60):
        inst = random_instance(seed)
        res = check_theorem(inst, "max-pair-product")
        assert res.passed
        assert abs(res.slack) <= 1e-9


def test_cross_opt_bound_tight_on_parallel_line_family():
    inst = generate(FamilySpec(Family.FIG4, n=10 ** 6, k=2))
    res = check_theorem(inst, "cross-opt-bound", cost=COST_MAX)
    assert res.passed
    # both sides approach 1 + sqrt(2): equality in the limit
    assert res.details["lhs"] == pytest.approx(1 + SQRT2, abs=1e-4)
    assert res.details["rhs"] == pytest.approx(1 + SQRT2, abs=1e-4)
    assert res.slack >= 0


def test_peak_slot_floor_with_spread_committee():
    # needs instances where k exceeds twice the max-sum spread ratio
    checked = 0
    for seed in range(40):
        inst = random_instance(seed)
        stats = duality_stats(inst)
        if inst.k > 2 * stats.k1:
            res = check_theorem(inst, "peak-slot-floor")
            assert res.passed
            checked += 1
    assert checked > 0


def test_unknown_check_id():
    inst = random_instance(0)
    with pytest.raises(ValidationError) as err:
        check_theorem(inst, "no-such-check")
    assert err.value.code == "UNKNOWN_THEOREM"
