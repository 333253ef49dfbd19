"""Instance generators: four fixed lower-bound families plus seeded random ones.

The fixed families are small line or triangle geometries whose best
achievable simultaneous ratio approaches a known closed form as the client
weight grows; the random families feed the property-verification harness.
All generators are deterministic functions of their spec (seed included).
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .metric import MetricSpace, metric_closure
from .objectives import Instance

SQRT2 = math.sqrt(2.0)
SQRT7 = math.sqrt(7.0)


class Family(enum.Enum):
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"
    FIG5 = "fig5"
    RANDOM_EUCLIDEAN = "random-euclidean"
    RANDOM_METRIC = "random-metric"


@dataclass(frozen=True)
class FamilySpec:
    """Parameters for one generated instance.

    ``n`` is the total client weight; ``k`` the committee size where the
    family does not force it; ``points``/``dim`` size the random families.
    """

    family: Family
    n: Optional[int] = None
    k: Optional[int] = None
    seed: int = 0
    points: Optional[int] = None
    dim: int = 2

    def label(self) -> str:
        parts = [self.family.value]
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.family in (Family.RANDOM_EUCLIDEAN, Family.RANDOM_METRIC):
            parts.append(f"seed={self.seed}")
        return " ".join(parts)


def _forced_k(spec: FamilySpec, forced: int) -> int:
    if spec.k is not None and spec.k != forced:
        raise ValidationError(
            f"{spec.family.value} forces k={forced}", code="INVALID_SPEC")
    return forced


def _need_n(spec: FamilySpec) -> int:
    if spec.n is None or spec.n < 2:
        raise ValidationError(
            f"{spec.family.value} needs total client weight n >= 2",
            code="INVALID_SPEC")
    return spec.n


def _fig2(spec: FamilySpec) -> Instance:
    # three collinear locations; one client shares a point with a facility,
    # the heavy client sits between the other two facilities
    n = _need_n(spec)
    k = _forced_k(spec, 2)
    space = MetricSpace.from_coords([[0.0], [1.0], [SQRT2]])
    return Instance(space=space, clients=((0, 1), (1, n - 1)),
                    facilities=((0, 1), (1, 1), (2, 1)), k=k)


def _fig3(spec: FamilySpec) -> Instance:
    n = _need_n(spec)
    k = _forced_k(spec, 3)
    far = 2.0 + (SQRT7 - 2.0) / 3.0
    space = MetricSpace.from_coords([[0.0], [1.0], [2.0], [far]])
    return Instance(space=space, clients=((0, 1), (2, n - 1)),
                    facilities=((1, 3), (3, 3)), k=k)


def _fig4(spec: FamilySpec) -> Instance:
    n = _need_n(spec)
    k = spec.k if spec.k is not None else 2
    if k < 2:
        raise ValidationError("this family needs k >= 2", code="INVALID_SPEC")
    space = MetricSpace.from_coords([[0.0], [1.0], [2.0], [1.0 + SQRT2]])
    return Instance(space=space, clients=((0, 1), (2, n - 1)),
                    facilities=((1, k), (3, k)), k=k)


def _fig5(spec: FamilySpec) -> Instance:
    # isoceles triangle: the apex holds two facility slots at distance
    # sqrt(2)/2 from both base corners, which are unit distance apart
    if spec.n is not None and spec.n != 2:
        raise ValidationError("this family has exactly two unit clients",
                              code="INVALID_SPEC")
    k = _forced_k(spec, 2)
    space = MetricSpace.from_coords([[0.0, 0.5], [-0.5, 0.0], [0.5, 0.0]])
    return Instance(space=space, clients=((1, 1), (2, 1)),
                    facilities=((0, 2), (1, 1), (2, 1)), k=k)


def _random_structure(rng: random.Random, spec: FamilySpec,
                      point_count: int) -> tuple[tuple, tuple, int]:
    n = spec.n if spec.n is not None else 12
    if n < 1:
        raise ValidationError("total client weight must be >= 1",
                              code="INVALID_SPEC")
    n_client_pts = rng.randint(1, min(point_count, n))
    client_pts = sorted(rng.sample(range(point_count), n_client_pts))
    weights = [1] * n_client_pts
    for _ in range(n - n_client_pts):
        weights[rng.randrange(n_client_pts)] += 1
    clients = tuple(zip(client_pts, weights))

    n_fac_pts = rng.randint(1, point_count)
    fac_pts = sorted(rng.sample(range(point_count), n_fac_pts))
    facilities = tuple((p, rng.randint(1, 3)) for p in fac_pts)
    total_mult = sum(m for _, m in facilities)

    if spec.k is not None:
        k = spec.k
        if k > total_mult:
            # pad the last facility so the requested k is feasible
            pad = k - total_mult
            facilities = facilities[:-1] + ((facilities[-1][0],
                                             facilities[-1][1] + pad),)
    else:
        k = rng.randint(1, min(5, total_mult))
    return clients, facilities, k


def _random_euclidean(spec: FamilySpec) -> Instance:
    rng = random.Random(spec.seed)
    point_count = spec.points if spec.points is not None else 8
    if point_count < 2:
        raise ValidationError("need at least 2 points", code="INVALID_SPEC")
    coords = [[rng.random() for _ in range(spec.dim)] for _ in range(point_count)]
    space = MetricSpace.from_coords(coords)
    clients, facilities, k = _random_structure(rng, spec, point_count)
    return Instance(space=space, clients=clients, facilities=facilities, k=k)


def _random_metric(spec: FamilySpec) -> Instance:
    # symmetric uniform edge weights, then min-plus closure; the lower bound
    # of 0.1 on raw weights keeps distances away from degenerate zeros
    rng = random.Random(spec.seed)
    point_count = spec.points if spec.points is not None else 8
    if point_count < 2:
        raise ValidationError("need at least 2 points", code="INVALID_SPEC")
    w = np.zeros((point_count, point_count))
    for i in range(point_count):
        for j in range(i + 1, point_count):
            w[i, j] = w[j, i] = rng.uniform(0.1, 1.0)
    space = MetricSpace(dist=metric_closure(w))
    clients, facilities, k = _random_structure(rng, spec, point_count)
    return Instance(space=space, clients=clients, facilities=facilities, k=k)


_GENERATORS = {
    Family.FIG2: _fig2,
    Family.FIG3: _fig3,
    Family.FIG4: _fig4,
    Family.FIG5: _fig5,
    Family.RANDOM_EUCLIDEAN: _random_euclidean,
    Family.RANDOM_METRIC: _random_metric,
}


def generate(spec: FamilySpec, path: Optional[str] = None) -> Instance:
    """Generate an instance; optionally write its document to ``path``."""
    inst = _GENERATORS[spec.family](spec)
    if path is not None:
        from .serialize import dump_instance

        dump_instance(inst, path)
    return inst


def parse_family(name: str) -> Family:
    for fam in Family:
        if fam.value == name:
            return fam
    raise ValidationError(f"unknown family {name!r}", code="INVALID_SPEC")
