"""Reduction from k-facility selection to single-facility selection.

Clients and whole committees become points of a derived space.  A client and
a committee are separated by the client's cost for that committee; two
committees are separated by the cheapest combined cost any single client
pays for both; and two clients are separated by the cheapest combined cost
any single committee charges them.  Whenever the per-client cost satisfies
the four-term exchange inequality

    f(i, A) <= f(i, B) + f(j, B) + f(j, A)

for all clients i, j and committees A, B, the derived matrix is a metric.
Sum and max costs satisfy it always, the q-th-closest cost for q > k/2; the
closest-slot cost does not, which is exactly what the negative tests probe.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapExceeded
from .metric import MetricSpace
from .objectives import ClientCost, Instance, Solution, client_cost
from .solvers import count_solutions, enumerate_solutions

DEFAULT_COMMITTEE_CAP = 10_000


@dataclass(frozen=True)
class CommitteeMetric:
    """Derived space over clients and committees.

    Point layout: client entries first (in instance order), then committees
    in enumeration order.
    """

    space: MetricSpace
    client_points: tuple[int, ...]
    committees: tuple[Solution, ...]


def build_committee_metric(inst: Instance, cost: ClientCost,
                           cap: int = DEFAULT_COMMITTEE_CAP) -> CommitteeMetric:
    total = count_solutions(inst)
    if total > cap:
        raise CapExceeded(f"{total} committees exceed the cap of {cap}",
                          code="TOO_MANY_COMMITTEES")
    committees = tuple(enumerate_solutions(inst, cap=cap))
    client_pts = tuple(p for p, _ in inst.clients)
    nc, na = len(client_pts), len(committees)

    # cost table: clients x committees
    f = np.empty((nc, na))
    for a, committee in enumerate(committees):
        for i, pt in enumerate(client_pts):
            f[i, a] = client_cost(inst, pt, committee, cost)

    n = nc + na
    d = np.zeros((n, n))
    # client-client: cheapest combined cost of a shared committee
    for i in range(nc):
        d[i, :nc] = (f[i] + f).min(axis=1)
    # client-committee: the cost itself
    d[:nc, nc:] = f
    d[nc:, :nc] = f.T
    # committee-committee: cheapest combined cost of a shared client
    for a in range(na):
        d[nc + a, nc:] = (f[:, a, None] + f).min(axis=0)
    np.fill_diagonal(d, 0.0)
    return CommitteeMetric(space=MetricSpace(dist=d), client_points=client_pts,
                           committees=committees)


@dataclass(frozen=True)
class TriangleCounterexample:
    client_i: int
    client_j: int
    committee_a: Solution
    committee_b: Solution
    lhs: float
    rhs: float


@dataclass(frozen=True)
class TrianglePropertyResult:
    passed: bool
    checked: int
    counterexample: Optional[TriangleCounterexample] = None


def check_cost_triangle_property(inst: Instance, cost: ClientCost,
                                 budget: int = 50_000, seed: int = 0,
                                 committee_cap: int = DEFAULT_COMMITTEE_CAP,
                                 tol: float = 1e-12) -> TrianglePropertyResult:
    """Test f(i,A) <= f(i,B) + f(j,B) + f(j,A) over client pairs and committee pairs.

    Exhaustive when the number of quadruples fits the budget, otherwise a
    seeded random sample of ``budget`` quadruples.  A counterexample is a
    normal return, not an error.
    """
    committees = tuple(enumerate_solutions(inst, cap=committee_cap))
    client_pts = tuple(p for p, _ in inst.clients)
    f = {
        (pt, c): client_cost(inst, pt, c, cost)
        for pt in set(client_pts)
        for c in committees
    }

    def violates(i, j, a, b) -> Optional[TriangleCounterexample]:
        lhs = f[(i, a)]
        rhs = f[(i, b)] + f[(j, b)] + f[(j, a)]
        if lhs > rhs + tol:
            return TriangleCounterexample(i, j, a, b, lhs, rhs)
        return None

    total = len(client_pts) ** 2 * len(committees) ** 2
    if total <= budget:
        checked = 0
        for i, j, a, b in itertools.product(client_pts, client_pts,
                                            committees, committees):
            checked += 1
            bad = violates(i, j, a, b)
            if bad:
                return TrianglePropertyResult(False, checked, bad)
        return TrianglePropertyResult(True, checked)

    rng = random.Random(seed)
    for checked in range(1, budget + 1):
        i = rng.choice(client_pts)
        j = rng.choice(client_pts)
        a = rng.choice(committees)
        b = rng.choice(committees)
        bad = violates(i, j, a, b)
        if bad:
            return TrianglePropertyResult(False, checked, bad)
    return TrianglePropertyResult(True, budget)
