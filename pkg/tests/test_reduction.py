import pytest

from conftest import naive_client_cost, random_instance
from multifac.errors import CapExceeded
from multifac.metric import MetricSpace, validate_metric
from multifac.objectives import (
    COST_MAX,
    COST_MIN,
    COST_SUM,
    Instance,
    cost_q_social,
)
from multifac.reduction import (
    build_committee_metric,
    check_cost_triangle_property,
)


def line_instance(coords, clients, facilities, k):
    return Instance(space=MetricSpace.from_coords([[c] for c in coords]),
                    clients=clients, facilities=facilities, k=k)


# clients at the ends of a line, paired facility slots inside: the
# closest-slot cost violates the exchange inequality here
MIN_WITNESS = line_instance([0.0, 1.0, 9.0, 10.0],
                            ((0, 1), (3, 1)), ((1, 2), (2, 2)), 2)


def test_single_committee_distances_are_costs():
    inst = line_instance([0.0, 1.0, 2.0], ((0, 1), (1, 1)), ((2, 2),), 2)
    derived = build_committee_metric(inst, COST_SUM)
    assert derived.committees == ((2, 2),)
    # last point is the only committee; its client distances equal the costs
    assert derived.space.dist[0, 2] == pytest.approx(4.0)
    assert derived.space.dist[1, 2] == pytest.approx(2.0)
    assert validate_metric(derived.space).ok


def test_short_line_family_all_triangles_hold(fig2):
    for cost in (COST_SUM, COST_MAX):
        derived = build_committee_metric(fig2, cost)
        assert len(derived.committees) == 3
        assert len(derived.client_points) == 2
        assert validate_metric(derived.space).ok, cost


def test_min_cost_breaks_the_derived_space():
    derived = build_committee_metric(MIN_WITNESS, COST_MIN)
    assert not validate_metric(derived.space).ok


def test_min_cost_triangle_counterexample_found():
    result = check_cost_triangle_property(MIN_WITNESS, COST_MIN)
    assert not result.passed
    ce = result.counterexample
    assert ce is not None
    # independently recheck the reported quadruple
    lhs = naive_client_cost(MIN_WITNESS, ce.client_i, ce.committee_a, COST_MIN)
    rhs = (naive_client_cost(MIN_WITNESS, ce.client_i, ce.committee_b, COST_MIN)
           + naive_client_cost(MIN_WITNESS, ce.client_j, ce.committee_b, COST_MIN)
           + naive_client_cost(MIN_WITNESS, ce.client_j, ce.committee_a, COST_MIN))
    assert lhs > rhs


def test_sum_cost_passes_sampled_draws():
    inst = random_instance(11)
    result = check_cost_triangle_property(inst, COST_SUM, budget=500, seed=1)
    assert result.passed
    assert result.checked == min(500, result.checked)


def test_max_cost_passes_exhaustively_on_small_instance():
    inst = line_instance([0.0, 0.7, 1.1, 3.0],
                         ((0, 1), (1, 1), (2, 1), (3, 1)),
                         ((0, 1), (1, 1), (2, 1), (3, 1)), 2)
    result = check_cost_triangle_property(inst, COST_MAX)
    assert result.passed
    committees = 6  # C(4, 2) with unit multiplicities
    assert result.checked == (4 * 4) * committees ** 2


def test_triangle_property_implies_valid_derived_space():
    for seed in range(12):
        inst = random_instance(seed, max_points=6)
        costs = [COST_SUM, COST_MAX, cost_q_social(inst.k // 2 + 1)]
        for cost in costs:
            tri = check_cost_triangle_property(inst, cost, budget=4000, seed=seed)
            assert tri.passed, (seed, cost)
            derived = build_committee_metric(inst, cost)
            assert validate_metric(derived.space).ok, (seed, cost)


def test_committee_cap():
    inst = line_instance(list(range(10)), ((0, 1),),
                         tuple((p, 2) for p in range(10)), 5)
    with pytest.raises(CapExceeded) as err:
        build_committee_metric(inst, COST_SUM, cap=10)
    assert err.value.code == "TOO_MANY_COMMITTEES"
