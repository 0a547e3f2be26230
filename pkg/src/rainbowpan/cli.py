"""Command line interface.

Exit codes: 0 success, 1 check failed (violation, not found, suite failure),
2 usage error, 3 generation failure. Vertex and color ids on the command line
and in JSON are 0-based; ``--describe`` renders cycles 1-based (``x1``, ``G1``).
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import RainbowCycleCert, RainbowPathCert, verify_cycle_cert, verify_path_cert
from .errors import GenerationError, PreconditionError, UsageError
from .extremal import make_balanced_bipartite_family, make_joined_split_family
from .family import GraphFamily, sigma
from .harness import MIXED, MODES, SUITES, GeneratorConfig, SuiteConfig, generate_family_with_sigma_at_least, run_suite, write_reports
from .oracle import NotFound, find_rainbow_cycle, pancyclicity_report
from .rotation import constructive_vertex_pancyclic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GENERATION = 0, 1, 2, 3


def _emit(obj, out_path: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    family = GraphFamily.load(args.family)
    if args.path:
        cert = RainbowPathCert.load(args.cert)
        problems = verify_path_cert(family, cert)
    else:
        cert = RainbowCycleCert.load(args.cert)
        problems = verify_cycle_cert(family, cert)
    if not problems:
        print("OK")
        return EXIT_OK
    for p in problems:
        print(p)
    return EXIT_FAIL


def cmd_find(args) -> int:
    family = GraphFamily.load(args.family)
    found = find_rainbow_cycle(family, args.length, args.through)
    if found is NotFound:
        print("NOT FOUND")
        return EXIT_FAIL
    print(found.describe() if args.describe else json.dumps(found.to_json()))
    return EXIT_OK


def cmd_sigma(args) -> int:
    family = GraphFamily.load(args.family)
    value, witness = sigma(family)
    if args.json:
        _emit({"sigma": "inf" if witness is None else value, "witness": witness.to_json() if witness else None})
    elif witness is None:
        print("sigma = inf (every pair is an edge of every graph)")
    else:
        print(f"sigma = {value}: {witness.describe()}")
    return EXIT_OK


def cmd_pancyclic(args) -> int:
    family = GraphFamily.load(args.family)
    result = constructive_vertex_pancyclic(family, args.vertex, oracle_only=args.oracle_only)
    _emit(result.to_json(), args.out)
    return EXIT_OK if result.outcome != "third" else EXIT_FAIL


def cmd_report(args) -> int:
    family = GraphFamily.load(args.family)
    report = pancyclicity_report(family, (args.min, args.max), per_vertex=not args.anywhere)
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.complete else EXIT_FAIL


def cmd_extremal(args) -> int:
    if args.kind == "bipartite":
        family = make_balanced_bipartite_family(args.n)
    else:
        family = make_joined_split_family(args.n)
    _emit(family.to_json(), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    threshold = float("inf") if args.sigma_min == "inf" else int(args.sigma_min)
    family = generate_family_with_sigma_at_least(
        GeneratorConfig(args.n, threshold, args.seed, args.budget, args.mode)
    )
    _emit(family.to_json(), args.out)
    return EXIT_OK


def cmd_suite(args) -> int:
    config = SuiteConfig(
        args.name, args.n_min, args.n_max, args.samples, args.seed, args.mode, args.budget, args.time_budget
    )
    families = [GraphFamily.load(p) for p in args.family] if args.family else None
    reports = run_suite(args.name, config, families)
    if args.out:
        with open(args.out, "w") as fh:
            summary = write_reports(reports, fh)
    else:
        summary = write_reports(reports, sys.stdout)
    if summary["failed"]:
        return EXIT_FAIL
    if summary["generation_failures"]:
        return EXIT_GENERATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbowpan", description="Rainbow cycles in graph families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a rainbow cycle (or path) certificate")
    p.add_argument("--family", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--path", action="store_true", help="the certificate is a path, not a cycle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("find", help="exhaustive search for one rainbow cycle")
    p.add_argument("--family", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--through", type=int)
    p.add_argument("--describe", action="store_true", help="print 1-based text instead of JSON")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("sigma", help="Ore-type quantity of a family with a witness")
    p.add_argument("--family", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("pancyclic", help="cycles of every length through one vertex")
    p.add_argument("--family", required=True)
    p.add_argument("--vertex", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--constructive", dest="oracle_only", action="store_false")
    g.add_argument("--oracle-only", dest="oracle_only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pancyclic, oracle_only=False)

    p = sub.add_parser("report", help="oracle pancyclicity grid over a length range")
    p.add_argument("--family", required=True)
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--anywhere", action="store_true", help="one cell per length instead of per vertex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("extremal", help="write one of the extremal families")
    p.add_argument("--kind", choices=("bipartite", "split"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("generate", help="random family with sigma at least a threshold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma-min", default="0", help="integer threshold or 'inf'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="repair-to-threshold")
    p.add_argument("--budget", type=int, default=20_000, help="mutation budget")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("suite", help="run a verification suite and stream JSON-lines reports")
    p.add_argument("--name", choices=SUITES, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES + (MIXED,), default=MIXED)
    p.add_argument("--budget", type=int, default=20_000, help="mutation budget per family")
    p.add_argument("--time-budget", type=float, help="seconds per family (default: $RAINBOWPAN_TIME_BUDGET or 30)")
    p.add_argument("--family", action="append", help="evaluate this family file instead of generating (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION


if __name__ == "__main__":
    sys.exit(main())
