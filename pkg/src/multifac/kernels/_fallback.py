"""Pure-Python brute-force scan over all feasible committees.

Reference implementation of the compiled kernel in ``_scan.pyx``: both must
enumerate committees in the same order (lexicographic on the sorted slot
tuple) and perform arithmetic in the same sequence, so that tie-breaking is
bit-identical across backends.
"""

from __future__ import annotations

import math

import numpy as np

AGG_MAX = 0
AGG_SUM = 1
AGG_CENTRUM = 2

COST_SUM = 0
COST_MAX = 1
COST_QSOC = 2


def column_sums(dist, weights):
    """Weighted column sums s_j = sum_i w_i * dist[i][j], accumulated in
    client order.  The sum-sum fast path and the brute-force scan both rank
    committees through these exact floats, so their tie-breaking agrees even
    when distinct committees are genuinely tied."""
    D = np.asarray(dist, dtype=np.float64).tolist()
    w = [float(x) for x in weights]
    nc = len(w)
    nf = len(D[0]) if D else 0
    out = [0.0] * nf
    for j in range(nf):
        s = 0.0
        for i in range(nc):
            s += w[i] * D[i][j]
        out[j] = s
    return out


def scan_optimum(dist, weights, mults, k, agg, l, cost, q):
    """Minimize an objective over every size-k multiset of facility columns.

    dist: (clients x facilities) float64 matrix; weights: per-client weights;
    mults: per-facility multiplicities.  Returns (value, counts) where counts
    gives the chosen multiplicity per facility column.  The first minimizer
    in enumeration order wins ties.
    """
    D = np.asarray(dist, dtype=np.float64).tolist()
    w = [float(x) for x in weights]
    m = [int(x) for x in mults]
    nf = len(m)
    nc = len(w)
    k = int(k)
    # The sum-sum objective separates into per-column sums.  Committees are
    # valued by adding chosen column sums one slot at a time in (sum, index)
    # key order, and equal float values break toward the smaller key vector.
    # Under this rule the scan provably returns the same committee as the
    # greedy column-ranking fast path, even when two committees are tied
    # below float resolution.
    if agg == AGG_SUM and cost == COST_SUM:
        col = column_sums(dist, weights)
        key_order = sorted(range(nf), key=lambda j: (col[j], j))
    else:
        col = key_order = None
    suffix = [0] * (nf + 1)
    for j in range(nf - 1, -1, -1):
        suffix[j] = suffix[j + 1] + m[j]
    if k > suffix[0]:
        raise ValueError("k exceeds total multiplicity")

    counts = [0] * nf
    best_val = math.inf
    best_counts = None

    def evaluate() -> float:
        if col is not None:
            total = 0.0
            for j in key_order:
                for _ in range(counts[j]):
                    total += col[j]
            return total
        costs = [0.0] * nc
        for i in range(nc):
            row = D[i]
            if cost == COST_SUM:
                s = 0.0
                for j in range(nf):
                    c = counts[j]
                    if c:
                        s += c * row[j]
                costs[i] = s
            elif cost == COST_MAX:
                mx = -1.0
                for j in range(nf):
                    if counts[j] and row[j] > mx:
                        mx = row[j]
                costs[i] = mx
            else:  # q-th closest slot, slots counted with multiplicity
                slot = []
                for j in range(nf):
                    slot.extend([row[j]] * counts[j])
                slot.sort()
                costs[i] = slot[q - 1]
        if agg == AGG_MAX:
            return max(costs)
        if agg == AGG_SUM:
            total = 0.0
            for i in range(nc):
                total += w[i] * costs[i]
            return total
        pairs = sorted(zip(costs, w), key=lambda t: -t[0])
        total = 0.0
        remaining = l
        for c, wi in pairs:
            take = min(int(wi), remaining)
            total += c * take
            remaining -= take
            if remaining == 0:
                break
        return total

    def key_less(challenger) -> bool:
        for j in key_order:
            if challenger[j] != best_counts[j]:
                return challenger[j] > best_counts[j]
        return False

    def dfs(j: int, remaining: int) -> None:
        nonlocal best_val, best_counts
        if remaining == 0:
            v = evaluate()
            if v < best_val or (v == best_val and key_order is not None
                                and key_less(counts)):
                best_val = v
                best_counts = tuple(counts)
            return
        if j == nf:
            return
        hi = min(m[j], remaining)
        lo = max(0, remaining - suffix[j + 1])
        for c in range(hi, lo - 1, -1):
            counts[j] = c
            dfs(j + 1, remaining - c)
        counts[j] = 0

    dfs(0, k)
    return best_val, best_counts
