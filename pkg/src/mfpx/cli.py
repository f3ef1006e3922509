"""Command line entry point ``mfpx``."""

from __future__ import annotations

import argparse
import sys

from .errors import MFPError, ParseError
from .pipeline import compute_newton_polytope, format_report
from .polynomials import parse_ode, parse_raw, parse_system
from .problems import (
    dense_template,
    ode_problem,
    problem_from_raw,
    problem_from_system,
)

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for tiebreaks and refinements")
    p.add_argument("--verify", action="store_true",
                   help="re-derive every vertex with the brute-force oracle")
    p.add_argument("--count-lattice", action="store_true", help="count lattice points")
    p.add_argument("--emit", choices=("vertices", "facets", "both", "count"), default="both")
    p.add_argument("--stats", action="store_true", help="extra counters; timings on stderr")
    p.add_argument("--threads", type=int, default=1, help="worker threads for oracle queries")
    p.add_argument("--batch", type=int, default=1,
                   help="facets tested per reconstruction round (changes oracle_calls)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfpx", description="Newton polytopes of eliminants via mixed fiber polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="polytope of a polynomial system or raw supports")
    comp.add_argument("--input", required=True, help="input file ('-' for stdin)")
    comp.add_argument("--raw", action="store_true", help="input uses the raw support format")
    _add_run_options(comp)

    ode = sub.add_parser("ode", help="differential elimination for x1 of x' = g(x)")
    ode.add_argument("--input", help="file with a vars line and x' = g lines")
    ode.add_argument("--order", type=int, help="number of derivatives of x1 (default n)")
    ode.add_argument("--template", help="dense template n,d,D instead of an input file")
    _add_run_options(ode)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _problem(args):
    if args.command == "compute":
        text = _read(args.input)
        if args.raw:
            return problem_from_raw(parse_raw(text))
        return problem_from_system(parse_system(text))
    if args.template:
        try:
            n, d, D = (int(x) for x in args.template.split(","))
        except ValueError:
            raise ParseError(f"--template expects n,d,D, got {args.template!r}") from None
        if args.order is not None and args.order != n:
            raise ParseError(f"--order {args.order} does not match template n={n}")
        return ode_problem(dense_template(n, d, D), n, mode="template")
    if not args.input:
        raise ParseError("ode needs --input or --template")
    names, g = parse_ode(_read(args.input))
    order = len(names) if args.order is None else args.order
    if order != len(names):
        raise ParseError(f"--order {order} does not match the {len(names)} state variables")
    return ode_problem(g, order, mode="exact")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = _problem(args)
    except ParseError as exc:
        print(f"mfpx: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"mfpx: {exc}", file=sys.stderr)
        return EXIT_PARSE if isinstance(exc, ValueError) else EXIT_ERROR
    count = args.count_lattice or args.emit == "count"
    try:
        report = compute_newton_polytope(problem, args.seed, args.verify, count_lattice=count,
                                         threads=args.threads, batch_size=args.batch)
    except MFPError as exc:
        print(f"mfpx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(format_report(report, "count" if args.emit == "count" else args.emit,
                                   args.stats))
    if args.stats:
        for phase, secs in report.timings.items():
            print(f"time {phase} {secs:.3f}s", file=sys.stderr)
    if report.verified is False:
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
