"""Command-line front end: ``lposat prove FILE`` and ``lposat batch DIR``."""

from __future__ import annotations

import argparse
import sys

from .prover import ProveOptions, batch, prove
from .sat import MalformedOutputError, ResourceLimitExceeded
from .trs import TrsError

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--order", choices=["strict", "quasi"], default="strict")
    p.add_argument("--encoding", choices=["symbol", "atom"], default="symbol")
    p.add_argument("--scc", choices=["on", "off"], default="off",
                   help="solve each strongly connected component separately")
    p.add_argument("--solver", default="internal",
                   help="'internal' or 'external:<command>'; the command gets the DIMACS path "
                        "(or use {input}/{output} placeholders)")
    p.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
    p.add_argument("--format", choices=["text", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lposat",
        description="Prove strict or quasi LPO termination of term rewrite systems via SAT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="prove one .trs file")
    p.add_argument("path")
    _common(p)
    p.add_argument("--print-model", action="store_true", help="print the precedence found")
    p.add_argument("--dimacs", metavar="PATH", help="write the CNF instance before solving")
    p.add_argument("--stats", action="store_true")

    b = sub.add_parser("batch", help="prove every .trs file below a directory")
    b.add_argument("directory")
    _common(b)
    b.add_argument("--jobs", type=int, default=1)
    return parser


def _options(args) -> ProveOptions:
    return ProveOptions(
        order=args.order,
        encoding=args.encoding,
        scc=args.scc == "on",
        solver=args.solver,
        timeout=args.timeout,
        dimacs=getattr(args, "dimacs", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _options(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.command == "batch":
        try:
            summary = batch(args.directory, opts, jobs=args.jobs)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        print(summary.to_json() if args.format == "json" else summary.to_text())
        return 0

    try:
        report = prove(args.path, opts)
    except (TrsError, OSError, MalformedOutputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ResourceLimitExceeded as exc:
        print(f"TIMEOUT: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text(print_model=args.print_model, stats=args.stats))
    return EXIT_YES if report.verdict == "YES" else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
