import math

import pytest

from multifac.errors import ValidationError
from multifac.families import Family, FamilySpec, generate, parse_family
from multifac.metric import validate_metric
from multifac.objectives import MAX_MAX, MAX_SUM, SUM_SUM, objective_value
from multifac.serialize import dumps_instance

SQRT2 = math.sqrt(2.0)
SQRT7 = math.sqrt(7.0)


def test_far_line_family_values():
    inst = generate(FamilySpec(Family.FIG3, n=10 ** 6))
    assert objective_value(inst, (1, 1, 1), MAX_SUM) == pytest.approx(3.0)
    assert objective_value(inst, (3, 3, 3), MAX_SUM) == pytest.approx(4 + SQRT7)


def test_triangle_family_values():
    inst = generate(FamilySpec(Family.FIG5))
    assert objective_value(inst, (0, 0), MAX_MAX) == pytest.approx(SQRT2 / 2)
    d = inst.space.dist
    assert d[0, 1] == pytest.approx(SQRT2 / 2)
    assert d[0, 2] == pytest.approx(SQRT2 / 2)
    assert d[1, 2] == pytest.approx(1.0)


def test_short_line_family_geometry():
    inst = generate(FamilySpec(Family.FIG2, n=5))
    d = inst.space.dist
    assert d[0, 1] == pytest.approx(1.0)
    assert d[1, 2] == pytest.approx(SQRT2 - 1)
    assert inst.k == 2
    assert inst.facilities == ((0, 1), (1, 1), (2, 1))


def test_parallel_line_family_scales_with_k():
    inst = generate(FamilySpec(Family.FIG4, n=100, k=5))
    assert inst.facilities == ((1, 5), (3, 5))
    d = inst.space.dist
    assert d[2, 3] == pytest.approx(SQRT2 - 1)
    assert d[0, 3] == pytest.approx(1 + SQRT2)


def test_every_family_yields_a_valid_metric():
    specs = [FamilySpec(Family.FIG2, n=4), FamilySpec(Family.FIG3, n=4),
             FamilySpec(Family.FIG4, n=4, k=2), FamilySpec(Family.FIG5)]
    specs += [FamilySpec(Family.RANDOM_EUCLIDEAN, n=6, seed=s) for s in range(5)]
    specs += [FamilySpec(Family.RANDOM_METRIC, n=6, seed=s) for s in range(5)]
    for spec in specs:
        inst = generate(spec)
        assert validate_metric(inst.space).ok, spec


def test_random_families_deterministic_per_seed():
    spec = FamilySpec(Family.RANDOM_METRIC, n=9, seed=42, points=8)
    a = dumps_instance(generate(spec))
    b = dumps_instance(generate(spec))
    assert a == b
    other = dumps_instance(generate(
        FamilySpec(Family.RANDOM_METRIC, n=9, seed=43, points=8)))
    assert a != other


def test_random_family_honors_requested_k():
    inst = generate(FamilySpec(Family.RANDOM_EUCLIDEAN, n=5, k=5, seed=1))
    assert inst.k == 5


def test_forced_parameters_rejected():
    with pytest.raises(ValidationError) as err:
        generate(FamilySpec(Family.FIG2, n=5, k=3))
    assert err.value.code == "INVALID_SPEC"
    with pytest.raises(ValidationError):
        generate(FamilySpec(Family.FIG3, n=5, k=2))
    with pytest.raises(ValidationError):
        generate(FamilySpec(Family.FIG5, n=7))
    with pytest.raises(ValidationError):
        generate(FamilySpec(Family.FIG4, n=5, k=1))
    with pytest.raises(ValidationError):
        generate(FamilySpec(Family.FIG2))  # n is required


def test_generate_writes_document(tmp_path):
    out = tmp_path / "inst.json"
    inst = generate(FamilySpec(Family.FIG2, n=5), path=out)
    from multifac.serialize import load_instance

    assert load_instance(out) == inst


def test_parse_family_names():
    assert parse_family("fig4") is Family.FIG4
    assert parse_family("random-metric") is Family.RANDOM_METRIC
    with pytest.raises(ValidationError):
        parse_family("fig9")


def test_heavy_weight_stays_compact():
    inst = generate(FamilySpec(Family.FIG2, n=10 ** 6))
    assert inst.total_weight == 10 ** 6
    assert len(inst.clients) == 2


def test_sum_sum_optimum_moves_with_weight():
    # at tiny n the between-point facility alone is best for sum-sum; at
    # large n the far pair takes over
    small = generate(FamilySpec(Family.FIG2, n=2))
    large = generate(FamilySpec(Family.FIG2, n=100))
    from multifac.solvers import sum_sum_fast

    assert sum_sum_fast(small).solution != sum_sum_fast(large).solution
    assert sum_sum_fast(large).solution == (1, 2)
