"""Command-line entry point.

Commands: check (default), export-graph, export-isosets, export-vectors,
export-cover, report.  Exit codes: 0 pass, 1 verification failure,
2 inconclusive, 3 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, euclid
from .pipeline import (
    EXIT_USAGE,
    RunConfig,
    export,
    run_check,
    write_report_json,
)

COMMANDS = (
    "check",
    "export-graph",
    "export-isosets",
    "export-vectors",
    "export-cover",
    "report",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    if len(primes) < 2:
        raise argparse.ArgumentTypeError("at least two primes are required")
    for p in primes:
        if not 2 < p < 2**31:
            raise argparse.ArgumentTypeError(f"prime {p} outside (2, 2^31)")
        if not euclid.is_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return primes


def _parse_edge(text: str) -> tuple[int, int]:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad edge {text!r}, want I,J")
    if i == j or not (0 <= i < 416 and 0 <= j < 416):
        raise argparse.ArgumentTypeError(f"edge {text!r} out of range")
    return (i, j)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="g24verify",
        description=(
            "Construct the G2(4) graph from the Hermitian unital in PG(2,16) "
            "and certify the 64-dimensional two-distance Borsuk counterexample."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "command",
        nargs="?",
        default="check",
        choices=COMMANDS,
        help="what to run (default: check)",
    )
    parser.add_argument("--out", metavar="PATH", help="output file for exports/report")
    parser.add_argument(
        "--format",
        dest="fmt",
        default="dimacs",
        choices=("dimacs", "json"),
        help="graph export format (export-graph only)",
    )
    parser.add_argument(
        "--primes",
        type=_parse_primes,
        default=euclid.DEFAULT_PRIMES,
        metavar="P1,P2",
        help="primes for the modular rank lower bounds",
    )
    parser.add_argument(
        "--with-clebsch-check",
        action="store_true",
        help="also verify each B component against the 2-coclique extension "
        "of the halved 5-cube by explicit isomorphism",
    )
    parser.add_argument(
        "--with-uniqueness",
        action="store_true",
        help="count all exact covers of C by special 5-cliques (expect 1)",
    )
    parser.add_argument(
        "--uniqueness-budget",
        type=int,
        default=1_000_000,
        metavar="N",
        help="node budget for the cover count before reporting inconclusive",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="worker cap for verification scans (all current stages are "
        "single-threaded; results never depend on this value)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        metavar="N",
        help="seed for randomized spot-check invariants only",
    )
    parser.add_argument(
        "--timings",
        action="store_true",
        help="include stage wall-clock times in output (breaks byte-for-byte "
        "reproducibility of the report)",
    )
    parser.add_argument(
        "--inject-flip-edge",
        type=_parse_edge,
        default=None,
        metavar="I,J",
        help="test hook: flip one adjacency after the graph is built",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if args.uniqueness_budget < 1:
        parser.error("--uniqueness-budget must be at least 1")

    cfg = RunConfig(
        command=args.command,
        out=args.out,
        fmt=args.fmt,
        primes=args.primes,
        with_clebsch=args.with_clebsch_check,
        with_uniqueness=args.with_uniqueness,
        uniqueness_budget=args.uniqueness_budget,
        threads=args.threads,
        seed=args.seed,
        include_timings=args.timings,
        inject_flip_edge=args.inject_flip_edge,
    )

    try:
        if cfg.command == "check":
            report = run_check(cfg)
            sys.stdout.write(report.to_text(cfg.include_timings))
            if cfg.out:
                write_report_json(report, cfg.out, cfg.include_timings)
            return report.exit_code
        code, report = export(cfg)
        sys.stdout.write(report.to_text(cfg.include_timings))
        if code == 0:
            sys.stdout.write(f"wrote {cfg.out}\n")
        return code
    except ValueError as exc:
        sys.stderr.write(f"g24verify: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"g24verify: i/o error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
