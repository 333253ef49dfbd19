"""Command-line surface.

Subcommands: solve (one objective), pair (simultaneous report), gen (write
an instance document), vote (run the veto election), verify (property
suites).  Exit codes: 0 ok, 1 a verified property failed, 2 bad input,
3 a resource cap was exceeded.  MULTIFAC_TOL overrides the default bound
tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

from . import bounds, kernels
from .compat import (
    BOUND_TOL,
    OptimaCache,
    best_simultaneous,
    duality_stats,
    ratio_report,
)
from .errors import CapExceeded, MultifacError, ValidationError
from .families import FamilySpec, generate, parse_family
from .objectives import (
    Aggregator,
    ClientCost,
    CostKind,
    Instance,
    ObjectiveSpec,
    parse_client_cost,
    parse_objective,
)
from .serialize import dump_instance, dumps_instance, load_instance
from .solvers import optimum
from .verify import (
    VERIFY_CSV_HEADER,
    run_verify,
    verify_csv_rows,
)
from .voting import induced_profile, plurality_veto, realized_distortion

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USER_ERROR = 2
EXIT_CAP = 3

PAIR_CSV_HEADER = ("instance", "n", "k", "pair", "candidate", "alpha1",
                   "alpha2", "simultaneous", "bound", "slack", "method1",
                   "method2")


def default_tol() -> float:
    raw = os.environ.get("MULTIFAC_TOL")
    if raw is None:
        return BOUND_TOL
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"MULTIFAC_TOL={raw!r} is not a number") from None


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="path to an instance document")
    p.add_argument("--family", help="generated family name "
                   "(fig2, fig3, fig4, fig5, random-euclidean, random-metric)")
    p.add_argument("--n", type=int, help="total client weight")
    p.add_argument("--k", type=int, help="committee size")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--points", type=int, help="point count (random families)")
    p.add_argument("--dim", type=int, default=2,
                   help="dimension (random-euclidean)")


def _load_instance(args) -> tuple[Instance, str]:
    if bool(args.instance) == bool(args.family):
        raise ValidationError("provide exactly one of --instance or --family")
    if args.instance:
        return load_instance(args.instance), args.instance
    spec = FamilySpec(family=parse_family(args.family), n=args.n, k=args.k,
                      seed=args.seed, points=args.points, dim=args.dim)
    return generate(spec), spec.label()


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, allow_nan=False) + "\n",
                          encoding="utf-8")


def cmd_solve(args) -> int:
    inst, _ = _load_instance(args)
    spec = parse_objective(args.objective)
    result = optimum(inst, spec, cap=args.cap)
    print(f"objective: {spec.name()}")
    print(f"slots: {list(result.solution)}")
    print(f"value: {result.value:.12g}")
    print(f"method: {result.method.value}")
    if args.output:
        _write_json(args.output, {
            "objective": spec.name(),
            "slots": list(result.solution),
            "value": result.value,
            "method": result.method.value,
        })
    return EXIT_OK


def _parse_pair(text: str) -> tuple[ObjectiveSpec, ObjectiveSpec]:
    parts = text.split("+")
    if len(parts) != 2:
        raise ValidationError("pair must be <objective>+<objective>")
    return parse_objective(parts[0]), parse_objective(parts[1])


def cmd_pair(args) -> int:
    inst, label = _load_instance(args)
    pair = _parse_pair(args.pair)
    cache = OptimaCache(inst, args.cap)
    if pair[0] == pair[1]:
        rep = ratio_report(inst, cache.get_opt(pair[0]).solution, pair,
                           cache=cache)
    else:
        rep = best_simultaneous(inst, pair, cap=args.cap, cache=cache)
    try:
        names = {pair[0].name(), pair[1].name()}
        if names == {"max-max", "max-sum"}:
            stats = duality_stats(inst, cache=cache)
            bound = bounds.pair_bound(pair, k=inst.k, k1=stats.k1, k2=stats.k2)
        else:
            bound = bounds.pair_bound(pair, k=inst.k)
    except ValidationError:
        bound = math.nan
    slack = bound - rep.simultaneous
    print(f"pair: {pair[0].name()} + {pair[1].name()}")
    print(f"candidate: {list(rep.candidate)}")
    print(f"alpha: ({rep.alpha_1:.12g}, {rep.alpha_2:.12g})")
    print(f"simultaneous: {rep.simultaneous:.12g}")
    print(f"bound: {bound:.12g}  slack: {slack:.12g}")
    print(f"methods: {rep.opt_1.method.value}, {rep.opt_2.method.value}")
    row = {
        "instance": label,
        "n": inst.total_weight,
        "k": inst.k,
        "pair": f"{pair[0].name()}+{pair[1].name()}",
        "candidate": " ".join(map(str, rep.candidate)),
        "alpha1": rep.alpha_1,
        "alpha2": rep.alpha_2,
        "simultaneous": rep.simultaneous,
        "bound": bound,
        "slack": slack,
        "method1": rep.opt_1.method.value,
        "method2": rep.opt_2.method.value,
    }
    if args.output:
        if args.format == "csv":
            with open(args.output, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh)
                w.writerow(PAIR_CSV_HEADER)
                w.writerow([row[h] for h in PAIR_CSV_HEADER])
        else:
            _write_json(args.output, row)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = FamilySpec(family=parse_family(args.family), n=args.n, k=args.k,
                      seed=args.seed, points=args.points, dim=args.dim)
    inst = generate(spec, path=args.output)
    if args.output:
        print(f"wrote {args.output} ({inst.space.point_count} points, "
              f"k={inst.k}, n={inst.total_weight})")
    else:
        print(dumps_instance(inst), end="")
    return EXIT_OK


def cmd_vote(args) -> int:
    order = None
    if args.order:
        order = [int(x) for x in args.order.split(",")]

    if args.profile:
        if args.instance or args.family:
            raise ValidationError("--profile excludes --instance/--family")
        from .serialize import parse_profile
        from .voting import OrdinalProfile

        with open(args.profile, "r", encoding="utf-8") as fh:
            committees, rankings = parse_profile(fh.read())
        profile = OrdinalProfile(committees=committees, rankings=rankings)
        transcript = plurality_veto(profile, order)
        winner = profile.committees[transcript.winner]
        print(f"voters: {len(rankings)}  candidates: {len(committees)}")
        print(f"winner: candidate {transcript.winner} slots {list(winner)}")
        print(f"vetoes: {' '.join(str(s.vetoed) for s in transcript.steps)}")
        print("distortion: not available without an instance metric")
        return EXIT_OK

    inst, _ = _load_instance(args)
    cost = parse_client_cost(args.cost)
    profile = induced_profile(inst, cost, voter_cap=args.voter_cap,
                              cap=args.cap)
    transcript = plurality_veto(profile, order)
    winner = profile.committees[transcript.winner]
    n = inst.total_weight
    print(f"voters: {n}  candidates: {len(profile.committees)}")
    print(f"winner: candidate {transcript.winner} slots {list(winner)}")
    print(f"vetoes: {' '.join(str(s.vetoed) for s in transcript.steps)}")
    levels = args.l if args.l else sorted({1, math.ceil(n / 2), n})
    for level in levels:
        spec = ObjectiveSpec(Aggregator.L_CENTRUM, cost, l=level)
        dist = realized_distortion(inst, winner, spec, cap=args.cap)
        print(f"distortion l={level}: {dist:.12g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise ValidationError("trials must be >= 1")
    tol = args.tol if args.tol is not None else default_tol()
    report = run_verify(args.trials, args.seed, suite=args.suite, tol=tol)
    for name, runs, passes, worst in report.summary():
        status = "ok" if passes == runs else "FAIL"
        print(f"{status:4s} {name:32s} {passes}/{runs}  worst slack {worst:.3e}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(VERIFY_CSV_HEADER)
            w.writerows(verify_csv_rows(report, args.suite))
        print(f"wrote {args.csv}")
    if not report.ok:
        base = Path(args.csv).with_suffix("") if args.csv else Path("verify")
        for idx, (record, inst) in enumerate(report.failures):
            if inst is None:
                continue
            path = Path(f"{base}.failing.{idx}.json")
            dump_instance(inst, path)
            print(f"FAILED {record.check} on {record.instance_label}; "
                  f"instance written to {path}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"all {len(report.records)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from . import __version__

    parser = argparse.ArgumentParser(
        prog="multifac",
        description="multi-objective facility location and committee selection",
    )
    parser.add_argument("--version", action="version",
                        version=f"multifac {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute one objective's optimum")
    _add_instance_args(p)
    p.add_argument("--objective", required=True,
                   help="sum-sum | max-sum | sum-max | max-max | "
                        "centrum:<l>:<sum|max|q:<q>>")
    p.add_argument("--cap", type=int, default=10**6,
                   help="committee enumeration cap")
    p.add_argument("-o", "--output", help="write a JSON result")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("pair", help="best simultaneous-approximation report")
    _add_instance_args(p)
    p.add_argument("--pair", required=True, help="<objective>+<objective>")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("-o", "--output", help="write the report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("gen", help="generate an instance document")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("-o", "--output", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("vote", help="run the veto election on an instance "
                                    "or a profile document")
    _add_instance_args(p)
    p.add_argument("--profile", help="path to a profile document "
                                     "(skips the induced-profile step)")
    p.add_argument("--cost", default="sum", help="sum | max | q:<q>")
    p.add_argument("--l", type=int, action="append",
                   help="centrum level for distortion (repeatable)")
    p.add_argument("--order", help="comma-separated veto order")
    p.add_argument("--voter-cap", type=int, default=1000)
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_vote)

    p = sub.add_parser("verify", help="run the property-verification suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", choices=("random", "lower-bounds", "all"),
                   default="random")
    p.add_argument("--tol", type=float, help="bound tolerance "
                   "(default from MULTIFAC_TOL or 1e-9)")
    p.add_argument("--csv", help="write one CSV row per instance and check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("backend", help="print the active scan backend")
    p.set_defaults(func=lambda a: print(kernels.backend_name()) or EXIT_OK)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
        return EXIT_OK if code is None else code
    except CapExceeded as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_CAP
    except MultifacError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_USER_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR


if __name__ == "__main__":
    sys.exit(main())
