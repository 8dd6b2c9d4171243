"""
Hoopoe SDK - Command Line

    hoopoe --function dejong --dim 2 --algorithm hoopoe --runs 5 --seed 42 \\
           --budget 10000 --out r.csv

`--algorithm both` runs the paired hoopoe/cuckoo comparison and, with
`--table-out`, writes the comparison table.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from .benchfns import available_functions
from .core import ConfigError, HoopoeError, UnknownFunctionError
from .harness import (
    DESK_DIMENSIONS,
    FULL_DIMENSIONS,
    Algorithm,
    ExperimentSpec,
    emit_csv,
    emit_table,
    emit_trace,
    run_experiment,
    run_protocol,
)
from .log import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

PROTOCOLS = {"full": FULL_DIMENSIONS, "desk": DESK_DIMENSIONS}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so cli_main returns codes"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hoopoe",
        description="Run hoopoe heuristic / cuckoo search benchmark experiments.",
    )
    parser.add_argument("--function", help=f"one of {', '.join(available_functions())}")
    parser.add_argument("--protocol", choices=sorted(PROTOCOLS),
                        help="all four functions at the full or desk-scale dimensions "
                             "(implies --algorithm both)")
    parser.add_argument("--dim", type=int, help="dimension (function default when omitted)")
    parser.add_argument("--algorithm", default="hoopoe",
                        choices=[a.value for a in Algorithm] + ["both"])
    parser.add_argument("--runs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0, help="base seed; run i uses seed + i")
    parser.add_argument("--budget", type=int, help="evaluations per run")
    parser.add_argument("--tolerance", type=float, help="success tolerance above the optimum")

    hoopoe = parser.add_argument_group("hoopoe heuristic")
    hoopoe.add_argument("--theta", type=float)
    hoopoe.add_argument("--pop", type=int, dest="population_size")
    hoopoe.add_argument("--radius", type=float)
    hoopoe.add_argument("--probes", type=int, dest="probes_per_region")
    hoopoe.add_argument("--dig-threshold", type=float, dest="dig_threshold")
    hoopoe.add_argument("--dig-budget", type=int, dest="dig_budget")
    hoopoe.add_argument("--shrink", type=float, dest="shrink_factor")

    levy = parser.add_argument_group("Lévy flight")
    levy.add_argument("--alpha", type=float)
    levy.add_argument("--lambda", type=float, dest="lambda_")

    cuckoo = parser.add_argument_group("cuckoo search")
    cuckoo.add_argument("--pa", type=float, dest="p_a")
    cuckoo.add_argument("--nests", type=int)

    output = parser.add_argument_group("output")
    output.add_argument("--out", help="summary CSV (per algorithm suffix with 'both')")
    output.add_argument("--trace-out", help="trace CSV of the first run")
    output.add_argument("--table-out", help="comparison table CSV (with 'both')")
    output.add_argument("--log-level", default="WARNING")
    output.add_argument("--log-json", action="store_true")
    return parser


def _overrides(args: argparse.Namespace, names: Sequence[str]) -> Dict[str, object]:
    return {name: getattr(args, name) for name in names if getattr(args, name) is not None}


HOOPOE_FLAGS = ("theta", "population_size", "radius", "probes_per_region",
                "dig_threshold", "dig_budget", "shrink_factor", "alpha", "lambda_")
CUCKOO_FLAGS = ("p_a", "nests", "alpha", "lambda_")


def _suffixed(path: str, algorithm: str) -> str:
    stem, dot, ext = path.rpartition(".")
    if not dot:
        return f"{path}.{algorithm}"
    return f"{stem}.{algorithm}.{ext}"


def _run_single(args: argparse.Namespace) -> None:
    algorithm = Algorithm.parse(args.algorithm)
    flags = HOOPOE_FLAGS if algorithm is Algorithm.HOOPOE else CUCKOO_FLAGS
    spec = ExperimentSpec.build(
        args.function, algorithm, dim=args.dim, runs=args.runs, base_seed=args.seed,
        budget=args.budget, success_tolerance=args.tolerance, **_overrides(args, flags),
    )
    summary = run_experiment(spec)
    if args.out:
        emit_csv(summary, args.out)
    if args.trace_out:
        emit_trace(summary.results[0], args.trace_out)
    print(summary.summary_line())


def _run_both(args: argparse.Namespace) -> None:
    if args.protocol:
        dimensions = dict(PROTOCOLS[args.protocol])
    else:
        dimensions = {args.function: args.dim}
    rows = run_protocol(
        dimensions,
        runs=args.runs,
        base_seed=args.seed,
        budget=args.budget,
        success_tolerance=args.tolerance,
        hoopoe_overrides=_overrides(args, HOOPOE_FLAGS),
        cuckoo_overrides=_overrides(args, CUCKOO_FLAGS),
    )
    for row in rows:
        report = row.comparison
        if args.out and len(rows) == 1:
            emit_csv(row.hoopoe, _suffixed(args.out, "hoopoe"))
            emit_csv(row.cuckoo, _suffixed(args.out, "cuckoo"))
        if args.trace_out and len(rows) == 1:
            emit_trace(row.hoopoe.results[0], _suffixed(args.trace_out, "hoopoe"))
            emit_trace(row.cuckoo.results[0], _suffixed(args.trace_out, "cuckoo"))
        print(row.hoopoe.summary_line())
        print(row.cuckoo.summary_line())
        print(
            f"{report.function}: mean evaluation delta (hoopoe - cuckoo) "
            f"{report.mean_delta:+.1f}; paired wins hoopoe {report.wins_first}, "
            f"cuckoo {report.wins_second}, ties {report.ties}"
        )
    if args.table_out:
        emit_table(rows, args.table_out)


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Parse flags, run, write outputs; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.function and not args.protocol:
            parser.error("--function or --protocol is required")
    except _UsageError as exc:
        print(f"hoopoe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        configure_logging(args.log_level, json_format=args.log_json)
    except ValueError as exc:
        print(f"hoopoe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.protocol or args.algorithm == "both":
            _run_both(args)
        else:
            _run_single(args)
    except (ConfigError, UnknownFunctionError) as exc:
        parser.print_usage(sys.stderr)
        print(f"hoopoe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HoopoeError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"hoopoe: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
