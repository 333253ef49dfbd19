import math

import pytest

from multifac import bounds
from multifac.errors import ValidationError
from multifac.objectives import MAX_MAX, MAX_SUM, SUM_MAX, SUM_SUM


def test_pair_bound_sum_pair_by_k():
    assert bounds.pair_bound((SUM_SUM, MAX_SUM), k=2) == pytest.approx(1 + math.sqrt(2))
    assert bounds.pair_bound((SUM_SUM, MAX_SUM), k=5) == pytest.approx(
        1 + math.sqrt(5 / 3))
    assert bounds.pair_bound((SUM_SUM, MAX_SUM), k=5) == pytest.approx(2.2910, abs=1e-4)


def test_pair_bound_max_pair():
    assert bounds.pair_bound((SUM_MAX, MAX_MAX), k=7) == pytest.approx(1 + math.sqrt(2))


def test_pair_bound_duality_pair():
    assert bounds.pair_bound((MAX_MAX, MAX_SUM), k1=1.0, k2=2.0) == pytest.approx(
        math.sqrt(2))
    assert bounds.pair_bound((MAX_MAX, MAX_SUM), k1=1.0, k2=9.0) == 2.0
    assert bounds.pair_bound((MAX_MAX, MAX_SUM), k=3) == pytest.approx(
        math.sqrt(3))
    assert bounds.pair_bound((MAX_MAX, MAX_SUM), k=9) == 2.0


def test_pair_bound_root_k_and_diagonals():
    assert bounds.pair_bound((SUM_SUM, SUM_MAX), k=4) == 2.0
    assert bounds.pair_bound((SUM_SUM, SUM_MAX), k=16) == 3.0
    assert bounds.pair_bound((SUM_SUM, MAX_MAX)) == 3.0
    assert bounds.pair_bound((SUM_MAX, MAX_SUM)) == 3.0
    assert bounds.pair_bound((SUM_SUM, SUM_SUM)) == 1.0


def test_pair_bound_unknown():
    from multifac.objectives import Aggregator, COST_SUM, ObjectiveSpec

    centrum = ObjectiveSpec(Aggregator.L_CENTRUM, COST_SUM, l=2)
    with pytest.raises(ValidationError) as err:
        bounds.pair_bound((centrum, SUM_SUM))
    assert err.value.code == "UNKNOWN_PAIR"


def test_overlap_split_bound_at_half_is_exactly_two():
    assert bounds.overlap_split_bound(0.5) == 2.0


def test_envelope_left_endpoint():
    assert bounds.even_split_envelope(1.0) == pytest.approx(1.0)
    assert bounds.odd_split_envelope(1.0) == pytest.approx(1.0)


def test_scan_reproduces_closed_forms():
    even = bounds.scan_envelope_max(bounds.even_split_envelope, 10 ** 6)
    assert even == pytest.approx(bounds.EVEN_SPLIT_BOUND, abs=1e-4)
    odd = bounds.scan_envelope_max(bounds.odd_split_envelope, 10 ** 6)
    assert odd == pytest.approx(bounds.ODD_SPLIT_BOUND, abs=1e-4)


def test_scan_generic_curve_path():
    got = bounds.scan_envelope_max(lambda x: -(x - 2.0) ** 2, 2001, lo=1.0, hi=3.0)
    assert got == pytest.approx(0.0, abs=1e-6)


def test_scan_requires_resolution():
    with pytest.raises(ValidationError):
        bounds.scan_envelope_max(bounds.even_split_envelope, 100)
