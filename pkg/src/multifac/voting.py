"""Sequential-veto committee election with verified distortion.

Voters are the instance's clients (weights expanded into individual
voters).  Each voter's top committee becomes a candidate; voters rank the
candidates by their own cost.  The election gives every candidate its
plurality score, then lets voters in a caller-chosen order strike one point
from their least-preferred still-alive candidate; the candidate whose score
reaches zero last wins.  The transcript also recovers a voter matching that
certifies the rule's quality: every voter weakly prefers the winner to the
matched voter's favorite candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CapExceeded, ValidationError
from .objectives import (
    ClientCost,
    Instance,
    ObjectiveSpec,
    Solution,
    client_cost,
    objective_value,
)
from .solvers import DEFAULT_ENUM_CAP, optimum, scan_client_optimum

DEFAULT_VOTER_CAP = 1000


@dataclass(frozen=True)
class OrdinalProfile:
    """Strict rankings of committee candidates, one per voter.

    ``voter_points`` ties voters back to instance points when the profile
    was induced from an instance; parsed profiles leave it empty.
    """

    committees: tuple[Solution, ...]
    rankings: tuple[tuple[int, ...], ...]
    voter_points: tuple[int, ...] = ()

    def __post_init__(self):
        n_cand = len(self.committees)
        for i, r in enumerate(self.rankings):
            if sorted(r) != list(range(n_cand)):
                raise ValidationError(
                    f"ranking {i} is not a permutation of candidate indices")


@dataclass(frozen=True)
class VetoStep:
    voter: int
    vetoed: int
    scores: tuple[int, ...]


@dataclass(frozen=True)
class VetoTranscript:
    veto_order: tuple[int, ...]
    initial_scores: tuple[int, ...]
    steps: tuple[VetoStep, ...]
    winner: int
    matching: tuple[int, ...]


def top_committee(inst: Instance, voter_point: int, cost: ClientCost,
                  cap: int = DEFAULT_ENUM_CAP) -> Solution:
    """The feasible committee minimizing one voter's cost, ties lexicographic."""
    row = np.ascontiguousarray(
        inst.space.dist[voter_point, inst.facility_points], dtype=np.float64)
    _, sol = scan_client_optimum(row, inst, cost, cap=cap)
    return sol


def induced_profile(inst: Instance, cost: ClientCost,
                    voter_cap: int = DEFAULT_VOTER_CAP,
                    cap: int = DEFAULT_ENUM_CAP) -> OrdinalProfile:
    """Expand weighted clients into voters and rank their top committees.

    Candidates are the voters' top committees, duplicates kept as distinct
    candidates; each voter ranks them by ascending own cost, ties broken by
    candidate index.
    """
    if inst.total_weight > voter_cap:
        raise CapExceeded(
            f"{inst.total_weight} voters exceed the cap of {voter_cap}")
    voters: list[int] = []
    for pt, w in inst.clients:
        voters.extend([pt] * w)
    tops = {pt: top_committee(inst, pt, cost, cap=cap)
            for pt in set(voters)}
    candidates = tuple(tops[pt] for pt in voters)
    rankings = []
    for pt in voters:
        costs = [client_cost(inst, pt, cand, cost) for cand in candidates]
        rankings.append(tuple(sorted(range(len(candidates)),
                                     key=lambda j: (costs[j], j))))
    return OrdinalProfile(committees=candidates, rankings=tuple(rankings),
                          voter_points=tuple(voters))


def plurality_veto(profile: OrdinalProfile,
                   veto_order: Optional[Sequence[int]] = None) -> VetoTranscript:
    """Run the veto sequence and recover the certifying voter matching.

    Scores start at plurality counts; each voter, in order, decrements the
    score of their least-preferred candidate that still has a positive
    score.  The candidate zeroed by the final veto wins.  The matching pairs
    the voters who vetoed a candidate with the voters whose favorite it was;
    every voter then weakly prefers the winner to their match's favorite,
    because the winner was still alive when they vetoed.
    """
    n = len(profile.rankings)
    if n == 0:
        raise ValidationError("profile has no voters", code="EMPTY_PROFILE")
    order = tuple(range(n)) if veto_order is None else tuple(veto_order)
    if sorted(order) != list(range(n)):
        raise ValidationError("veto order must be a permutation of voters")

    m = len(profile.committees)
    scores = [0] * m
    for r in profile.rankings:
        scores[r[0]] += 1
    initial = tuple(scores)

    steps: list[VetoStep] = []
    vetoed_by: dict[int, list[int]] = {}
    last_zeroed = -1
    for voter in order:
        ranking = profile.rankings[voter]
        target = next(c for c in reversed(ranking) if scores[c] > 0)
        scores[target] -= 1
        vetoed_by.setdefault(target, []).append(voter)
        if scores[target] == 0:
            last_zeroed = target
        steps.append(VetoStep(voter=voter, vetoed=target, scores=tuple(scores)))

    # each candidate receives exactly as many vetoes as it has supporters,
    # so zipping the two lists per candidate yields a bijection on voters
    supporters: dict[int, list[int]] = {}
    for voter, r in enumerate(profile.rankings):
        supporters.setdefault(r[0], []).append(voter)
    matching = [-1] * n
    for cand, vetoers in vetoed_by.items():
        for vetoer, supporter in zip(vetoers, supporters.get(cand, [])):
            matching[vetoer] = supporter

    return VetoTranscript(veto_order=order, initial_scores=initial,
                          steps=tuple(steps), winner=last_zeroed,
                          matching=tuple(matching))


def realized_distortion(inst: Instance, winner: Solution, spec: ObjectiveSpec,
                        cap: int = DEFAULT_ENUM_CAP) -> float:
    """Winner cost over optimum cost on the known metric.

    A zero optimum with a costlier winner reports as infinity; a zero-cost
    winner against a zero optimum counts as 1.
    """
    winner = inst.require_valid_solution(winner)
    opt = optimum(inst, spec, cap=cap)
    value = objective_value(inst, winner, spec)
    if opt.value == 0.0:
        return 1.0 if value == 0.0 else math.inf
    return value / opt.value
