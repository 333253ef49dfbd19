#!/usr/bin/env python3
"""Benchmark the compiled committee-scan kernel against the pure-Python fallback.

Times the brute-force optimum scan on instances large enough for the inner
loop to dominate.  Run from a checkout:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --points 14 --k 6 --clients 24
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from multifac.kernels import _fallback
from multifac.solvers import count_solutions
from multifac.families import Family, FamilySpec, generate
from multifac.objectives import Instance
from multifac.metric import MetricSpace

try:
    from multifac.kernels import _scan
except ImportError:
    _scan = None

CASES = [
    ("max-sum", _fallback.AGG_MAX, None, _fallback.COST_SUM, None),
    ("sum-max", _fallback.AGG_SUM, None, _fallback.COST_MAX, None),
    ("sum-sum", _fallback.AGG_SUM, None, _fallback.COST_SUM, None),
    ("max-q2", _fallback.AGG_MAX, None, _fallback.COST_QSOC, 2),
    ("centrum", _fallback.AGG_CENTRUM, "half", _fallback.COST_SUM, None),
]


def build_instance(points: int, clients: int, k: int, seed: int) -> Instance:
    rng = np.random.default_rng(seed)
    coords = rng.random((points + clients, 2))
    space = MetricSpace.from_coords(coords)
    client_entries = tuple((points + i, int(rng.integers(1, 4)))
                           for i in range(clients))
    facilities = tuple((p, 2) for p in range(points))
    return Instance(space=space, clients=client_entries,
                    facilities=facilities, k=k)


def time_backend(fn, inst, agg, l, cost, q, repeat: int) -> float:
    if l == "half":
        l = max(1, inst.total_weight // 2)
    args = (inst.client_facility_dist, inst.weights, inst.facility_mults,
            inst.k, agg, l, cost, q)
    fn(*args)  # warm up; also validates the call
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=12)
    parser.add_argument("--clients", type=int, default=20)
    parser.add_argument("--k", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    inst = build_instance(args.points, args.clients, args.k, args.seed)
    n_comm = count_solutions(inst)
    print(f"instance: {args.points} facility points x2, "
          f"{args.clients} client points, k={args.k} "
          f"-> {n_comm} committees")
    if _scan is None:
        print("compiled kernel not built; showing fallback times only")

    header = f"{'objective':<10} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, agg, l, cost, q in CASES:
        py = time_backend(_fallback.scan_optimum, inst, agg, l, cost, q,
                          args.repeat)
        if _scan is not None:
            cy = time_backend(_scan.scan_optimum, inst, agg, l, cost, q,
                              args.repeat)
            print(f"{name:<10} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms "
                  f"{py / cy:>8.1f}x")
        else:
            print(f"{name:<10} {py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
