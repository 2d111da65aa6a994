"""Command-line interface.

Exit codes: 0 success, 1 property violation, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import configs
from .birch import count_birch
from .campaigns import CAMPAIGNS, DEFAULT_COORD_BOUND, run_campaign
from .configs import GeneratorSpec
from .errors import BirchError, InconsistencyDetected, NotPrimePower
from .kernel import format_rational, is_general_position
from .tverberg import count_tverberg, topological_lower_bound, tverberg_lower_bound

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
WORKERS_ENV = "BIRCHPART_WORKERS"


def _exact(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {k: _exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    return value


def _emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "structured":
        json.dump(_exact(doc), out, indent=2)
        out.write("\n")
        return
    for key, value in doc.items():
        if isinstance(value, list) and value and key in ("witnesses", "violations", "counterexamples"):
            out.write(f"{key}:\n")
            for item in value:
                out.write(f"  {_exact(item)}\n")
        elif isinstance(value, dict):
            out.write(f"{key}: " + ", ".join(f"{k}={_exact(v)}" for k, v in value.items()) + "\n")
        else:
            out.write(f"{key}: {_exact(value)}\n")


def cmd_count(args) -> int:
    X = configs.load(args.input)
    if args.subject == "birch":
        report = count_birch(X, collect_witnesses=args.witnesses)
        k, d = report.k, X.dim
        doc = {
            "subject": "birch",
            "points": len(X),
            "d": d,
            "k": k,
            "count": report.count,
            "bounds": {
                "k!": math.factorial(k),
                "conjectured_ceiling (k!)^d": math.factorial(k) ** d,
            },
            "within_conjectured_ceiling": report.count <= math.factorial(k) ** d,
            "elapsed_s": round(report.elapsed, 4),
        }
        if args.witnesses:
            doc["witnesses"] = [str(p) for p in report.witnesses]
    else:
        if args.q is None:
            raise _Usage("count tverberg requires --q")
        q, d = args.q, X.dim
        report = count_tverberg(X, q, collect_witnesses=args.witnesses)
        bounds = {"(q-d)!": tverberg_lower_bound(q, d)}
        if report.by_type:
            k_min = min(1 if sig == "I" else int(sig[len("II(k="):-1]) for sig in report.by_type)
            bounds["(q-k_min)!"] = math.factorial(max(q - k_min, 0))
        try:
            bounds["topological (prime power)"] = topological_lower_bound(q, d)
        except NotPrimePower:
            bounds["topological (prime power)"] = "n/a"
        bounds["sierksma_conjecture ((q-1)!)^d"] = math.factorial(q - 1) ** d
        doc = {
            "subject": "tverberg",
            "points": len(X),
            "d": d,
            "q": q,
            "total": report.total,
            "by_type": dict(sorted(report.by_type.items())),
            "bounds": bounds,
            "elapsed_s": round(report.elapsed, 4),
        }
        if args.witnesses:
            doc["witnesses"] = [str(p) for p in report.witnesses]
    _emit(doc, args.format)
    return EXIT_OK


def cmd_generate(args) -> int:
    kq = args.q if args.kind == "sierksma_tverberg" else args.k
    if kq is None:
        kq = 2
    spec = GeneratorSpec(
        kind=args.kind,
        d=1 if args.kind == "line_balanced" else args.d,
        k_or_q=kq,
        epsilon=Fraction(args.epsilon),
        seed=args.seed,
        coord_bound=args.coord_bound or 0,
        n=args.n,
        wrt_origin=not args.no_origin,
    )
    X = spec.build()
    configs.save(X, args.out)
    wrt = args.kind != "sierksma_tverberg" and not (args.kind == "random" and args.no_origin)
    doc = {
        "written": str(args.out),
        "label": X.label,
        "points": len(X),
        "d": X.dim,
        "general_position": is_general_position(X),
    }
    if wrt:
        doc["general_position_wrt_origin"] = is_general_position(X, (0,) * X.dim)
    _emit(doc, args.format)
    return EXIT_OK


def cmd_campaign(args) -> int:
    flag = "q" if args.name == "tverberg-parity" else "k"
    kq = getattr(args, flag)
    if args.name == "pair-lemma":
        kq = 0
    elif kq is None:
        raise _Usage(f"campaign {args.name} requires --{flag}")
    result = run_campaign(args.name, args.d, kq, args.trials, args.seed, args.workers, args.coord_bound)
    doc = result.to_dict()
    if args.format == "human":
        doc = {
            "campaign": result.campaign,
            "parameters": result.parameters,
            "trials": result.trials,
            "histogram": doc["histogram"],
            "max_observed": result.max_observed,
            "violations": [f"trial {v['trial']} seed {v['seed']}: observed {v['observed']}, "
                           f"expected {v['expected']}" for v in result.violations],
            "status": "PASS" if result.passed else "FAIL",
            "elapsed_s": round(result.elapsed, 3),
        }
        if result.conjecture_ceiling is not None:
            doc["conjecture_ceiling"] = result.conjecture_ceiling
            doc["ceiling_respected"] = result.ceiling_respected
    _emit(doc, args.format)
    for entry in result.counterexamples:
        sys.stdout.write(
            "\n*** COUNTEREXAMPLE FOUND ***\n"
            f"trial {entry['trial']} seed {entry['seed']}: B_0 = {entry['observed']} "
            f"exceeds {result.conjecture_ceiling}\n{entry['configuration']}"
        )
    if args.format == "human":
        for entry in result.violations:
            sys.stdout.write(f"\nviolating configuration (trial {entry['trial']}):\n{entry['configuration']}")
    return EXIT_OK if result.passed else EXIT_VIOLATION


class _Usage(Exception):
    pass


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="birchpart", description="Count Birch and Tverberg partitions exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("human", "structured"), default="human")

    p = sub.add_parser("count", parents=[fmt], help="count partitions of a configuration file")
    p.add_argument("subject", choices=("birch", "tverberg"))
    p.add_argument("--input", required=True, help="configuration file (.json for the structured variant)")
    p.add_argument("--q", type=int, help="number of blocks (tverberg)")
    p.add_argument("--witnesses", action="store_true", help="list every counted partition")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("generate", parents=[fmt], help="write a reference or random configuration")
    p.add_argument("--kind", choices=configs.KINDS, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int, help="number of points (random); default k(d+1)")
    p.add_argument("--epsilon", default="1/20")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coord-bound", type=int)
    p.add_argument("--no-origin", action="store_true", help="random: skip general position w.r.t. the origin")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("campaign", parents=[fmt], help="run a seeded property campaign")
    p.add_argument("name", choices=CAMPAIGNS)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--coord-bound", type=int, default=DEFAULT_COORD_BOUND)
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
    except InconsistencyDetected as exc:
        print(f"PROPERTY VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (BirchError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
