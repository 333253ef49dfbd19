"""Closed-form guarantees for simultaneous approximation, as executable values.

Each supported objective pair maps to the best proven worst-case bound on
the simultaneous ratio achievable by some committee.  The split-envelope
curves are the case analyses behind the stitched-committee guarantees; their
numeric maxima are checked against the closed forms by the scan function.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .errors import ValidationError
from .objectives import MAX_MAX, MAX_SUM, SUM_MAX, SUM_SUM, ObjectiveSpec

SQRT2 = math.sqrt(2.0)
TWO_OPT_SELECTOR_BOUND = 1.0 + SQRT2          # best of the two optima, k <= 2
EVEN_SPLIT_BOUND = (5.0 + math.sqrt(17.0)) / 4.0
ODD_SPLIT_BOUND = 1.0 + math.sqrt(5.0 / 3.0)  # also the k >= 3 stitched bound
SUM_OPT_GLOBAL_BOUND = 3.0                    # sum-sum optimum vs any objective


def overlap_split_bound(a: float) -> float:
    """Two-candidate guarantee when the optima differ in a fraction a <= 1 of
    their slots: (sqrt(a^2 + 2a + 5) + a + 1) / 2."""
    if a < 0:
        raise ValidationError("overlap ratio a must be nonnegative")
    return (math.sqrt(a * a + 2.0 * a + 5.0) + a + 1.0) / 2.0


def even_split_envelope(x: float) -> float:
    """Case envelope for an even split of the non-shared slots."""
    return min(x, 1.0 / x + 2.0, max(2.0 + 1.0 / (2.0 * x), (1.0 + x) / 2.0))


def odd_split_envelope(x: float) -> float:
    """Case envelope for an odd split of the non-shared slots."""
    return min(x, 1.0 / x + 2.0, max(2.0 + 2.0 / (3.0 * x), (1.0 + x) / 2.0))


def scan_envelope_max(curve: Callable[[float], float], resolution: int,
                      lo: float = 1.0, hi: float = 100.0) -> float:
    """Numerically maximize an envelope curve on a uniform grid."""
    if resolution < 1000:
        raise ValidationError("resolution must be at least 1000 grid points")
    xs = np.linspace(lo, hi, resolution)
    f1 = xs
    f2 = 1.0 / xs + 2.0
    f4 = (1.0 + xs) / 2.0
    if curve is even_split_envelope:
        f3 = 2.0 + 1.0 / (2.0 * xs)
    elif curve is odd_split_envelope:
        f3 = 2.0 + 2.0 / (3.0 * xs)
    else:
        return float(max(curve(float(x)) for x in xs))
    return float(np.minimum(np.minimum(f1, f2), np.maximum(f3, f4)).max())


def _canon(spec: ObjectiveSpec) -> str:
    return spec.name()


def pair_bound(pair: tuple[ObjectiveSpec, ObjectiveSpec], *,
               k: Optional[int] = None, k1: Optional[float] = None,
               k2: Optional[float] = None) -> float:
    """Proven simultaneous-approximation guarantee for an objective pair.

    Ratio-pair parameters k1, k2 sharpen the max-max/max-sum bound when
    provided; k is required for the size-dependent bounds.
    """
    names = frozenset((_canon(pair[0]), _canon(pair[1])))
    if len(names) == 1:
        return 1.0
    ss, ms, sm, mm = (_canon(SUM_SUM), _canon(MAX_SUM),
                      _canon(SUM_MAX), _canon(MAX_MAX))
    if names == {ss, ms}:
        if k is None:
            raise ValidationError("pair bound needs k", code="UNKNOWN_PAIR")
        return TWO_OPT_SELECTOR_BOUND if k <= 2 else ODD_SPLIT_BOUND
    if names == {sm, mm}:
        return TWO_OPT_SELECTOR_BOUND
    if names == {mm, ms}:
        base = 2.0
        if k1 is not None and k2 is not None and k1 > 0:
            return min(math.sqrt(k2 / k1), base)
        if k is not None:
            return min(math.sqrt(float(k)), base)
        return base
    if names == {ss, sm}:
        if k is None:
            raise ValidationError("pair bound needs k", code="UNKNOWN_PAIR")
        return min(math.sqrt(float(k)), SUM_OPT_GLOBAL_BOUND)
    if names == {ss, mm} or names == {sm, ms}:
        return SUM_OPT_GLOBAL_BOUND
    raise ValidationError(f"no known bound for pair {sorted(names)}",
                          code="UNKNOWN_PAIR")
