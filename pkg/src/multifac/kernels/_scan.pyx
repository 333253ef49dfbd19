# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force scan over all feasible committees.

Mirror of ``_fallback.scan_optimum``: same enumeration order (lexicographic
on the sorted slot tuple) and same arithmetic sequence, so tie-breaking is
bit-identical across backends.
"""

import math

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF AGG_MAX = 0
DEF AGG_SUM = 1
DEF AGG_CENTRUM = 2

DEF COST_SUM = 0
DEF COST_MAX = 1
DEF COST_QSOC = 2


def column_sums(dist, weights):
    """Weighted column sums, accumulated in client order; see the fallback."""
    cdef double[:, ::1] D = np.ascontiguousarray(dist, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef long nc = D.shape[0]
    cdef long nf = D.shape[1]
    out_arr = np.zeros(nf, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef long i, j
    cdef double s
    for j in range(nf):
        s = 0.0
        for i in range(nc):
            s += w[i] * D[i, j]
        out[j] = s
    return [float(x) for x in out_arr]


cdef double _evaluate(double[:, ::1] D, double[::1] w, long[::1] counts,
                      long nc, long nf, int agg, long l, int cost, long q,
                      double[::1] costs, double[::1] slot, double[::1] cw,
                      double[::1] col, long[::1] key_order, bint use_col) noexcept:
    cdef long i, j, c, t, idx, take, remaining
    cdef double s, mx, total, key
    if use_col:
        # one slot at a time in (column sum, index) key order; see the
        # fallback for why this ordering pins down tie-breaking
        total = 0.0
        for t in range(nf):
            j = key_order[t]
            for c in range(counts[j]):
                total += col[j]
        return total
    for i in range(nc):
        if cost == COST_SUM:
            s = 0.0
            for j in range(nf):
                c = counts[j]
                if c:
                    s += c * D[i, j]
            costs[i] = s
        elif cost == COST_MAX:
            mx = -1.0
            for j in range(nf):
                if counts[j] and D[i, j] > mx:
                    mx = D[i, j]
            costs[i] = mx
        else:
            idx = 0
            for j in range(nf):
                for t in range(counts[j]):
                    slot[idx] = D[i, j]
                    idx += 1
            # insertion sort ascending, idx == k is small
            for t in range(1, idx):
                key = slot[t]
                j = t - 1
                while j >= 0 and slot[j] > key:
                    slot[j + 1] = slot[j]
                    j -= 1
                slot[j + 1] = key
            costs[i] = slot[q - 1]

    if agg == AGG_MAX:
        mx = costs[0]
        for i in range(1, nc):
            if costs[i] > mx:
                mx = costs[i]
        return mx
    if agg == AGG_SUM:
        total = 0.0
        for i in range(nc):
            total += w[i] * costs[i]
        return total
    # centrum: weighted top-l sum; sort (cost, weight) descending by cost
    for i in range(nc):
        cw[i] = w[i]
    for t in range(1, nc):
        key = costs[t]
        s = cw[t]
        j = t - 1
        while j >= 0 and costs[j] < key:
            costs[j + 1] = costs[j]
            cw[j + 1] = cw[j]
            j -= 1
        costs[j + 1] = key
        cw[j + 1] = s
    total = 0.0
    remaining = l
    for i in range(nc):
        take = <long>cw[i]
        if take > remaining:
            take = remaining
        total += costs[i] * take
        remaining -= take
        if remaining == 0:
            break
    return total


cdef bint _key_less(long[::1] challenger, long[::1] best, long[::1] key_order,
                    long nf) noexcept:
    cdef long t, j
    for t in range(nf):
        j = key_order[t]
        if challenger[j] != best[j]:
            return challenger[j] > best[j]
    return False


cdef void _dfs(long j, long remaining,
               double[:, ::1] D, double[::1] w, long[::1] m, long[::1] suffix,
               long nc, long nf, long k, int agg, long l, int cost, long q,
               long[::1] counts, long[::1] best_counts, double[::1] best_val,
               double[::1] costs, double[::1] slot, double[::1] cw,
               double[::1] col, long[::1] key_order, bint use_col) noexcept:
    cdef long c, hi, lo, t
    cdef double v
    cdef bint better
    if remaining == 0:
        v = _evaluate(D, w, counts, nc, nf, agg, l, cost, q, costs, slot, cw,
                      col, key_order, use_col)
        better = v < best_val[0]
        if not better and use_col and v == best_val[0]:
            better = _key_less(counts, best_counts, key_order, nf)
        if better:
            best_val[0] = v
            for t in range(nf):
                best_counts[t] = counts[t]
        return
    if j == nf:
        return
    hi = m[j] if m[j] < remaining else remaining
    lo = remaining - suffix[j + 1]
    if lo < 0:
        lo = 0
    c = hi
    while c >= lo:
        counts[j] = c
        _dfs(j + 1, remaining - c, D, w, m, suffix, nc, nf, k, agg, l, cost, q,
             counts, best_counts, best_val, costs, slot, cw, col, key_order,
             use_col)
        c -= 1
    counts[j] = 0


def scan_optimum(dist, weights, mults, k, agg, l, cost, q):
    """Minimize an objective over every size-k multiset of facility columns.

    Same contract as the pure-Python fallback; see ``_fallback.scan_optimum``.
    """
    cdef double[:, ::1] D = np.ascontiguousarray(dist, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef long[::1] m = np.ascontiguousarray(mults, dtype=np.int64)
    cdef long nc = D.shape[0]
    cdef long nf = D.shape[1]
    cdef long kk = k
    cdef int agg_c = agg
    cdef long l_c = 0 if l is None else l
    cdef int cost_c = cost
    cdef long q_c = 0 if q is None else q

    suffix_arr = np.zeros(nf + 1, dtype=np.int64)
    cdef long[::1] suffix = suffix_arr
    cdef long j
    for j in range(nf - 1, -1, -1):
        suffix[j] = suffix[j + 1] + m[j]
    if kk > suffix[0]:
        raise ValueError("k exceeds total multiplicity")

    counts_arr = np.zeros(nf, dtype=np.int64)
    best_counts_arr = np.zeros(nf, dtype=np.int64)
    best_val_arr = np.array([math.inf], dtype=np.float64)
    costs_arr = np.zeros(nc, dtype=np.float64)
    slot_arr = np.zeros(kk, dtype=np.float64)
    cw_arr = np.zeros(nc, dtype=np.float64)
    cdef bint use_col = (agg_c == AGG_SUM and cost_c == COST_SUM)
    if use_col:
        col_arr = np.asarray(column_sums(dist, weights), dtype=np.float64)
        key_arr = np.lexsort((np.arange(nf), col_arr)).astype(np.int64)
    else:
        col_arr = np.zeros(1, dtype=np.float64)
        key_arr = np.zeros(1, dtype=np.int64)

    _dfs(0, kk, D, w, m, suffix, nc, nf, kk, agg_c, l_c, cost_c, q_c,
         counts_arr, best_counts_arr, best_val_arr, costs_arr, slot_arr, cw_arr,
         col_arr, key_arr, use_col)

    return float(best_val_arr[0]), tuple(int(x) for x in best_counts_arr)
