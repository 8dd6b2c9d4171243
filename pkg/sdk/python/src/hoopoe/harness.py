"""
Hoopoe SDK - Experiment Harness

Repeated seeded runs per function and algorithm, success-rate and
evaluation statistics, paired hoopoe-vs-cuckoo comparison, and CSV output
for summaries, traces and the comparison table.
"""

import asyncio
import csv
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

try:
    from typing import TypeAlias
except ImportError:  # Python < 3.10
    from typing_extensions import TypeAlias

import numpy as np

from .benchfns import BenchmarkSpec, registry
from .core import MAX_SEED, ComparisonError, ConfigError, HoopoeError, OutputError
from .cuckoo import CuckooConfig, CuckooSearch
from .engine import DEFAULT_BUDGET, DEFAULT_TOLERANCE, HoopoeConfig, HoopoeHeuristic, RunResult

logger = logging.getLogger(__name__)

PathLike: TypeAlias = Union[str, Path]
AlgorithmConfig: TypeAlias = Union[HoopoeConfig, CuckooConfig]

SUMMARY_COLUMNS = ("seed", "success", "best_value", "evaluations", "mode_switch_iteration")
TRACE_COLUMNS = ("iteration", "evaluations", "best_value", "mode")
TABLE_COLUMNS = (
    "function", "dim", "cuckoo", "hoopoe", "mean_delta",
    "cuckoo_std", "hoopoe_std", "hoopoe_wins", "cuckoo_wins", "ties",
)
FOOTER_TAG = "summary"

# Dimensions of the published comparison and of the reduced desk-scale suite
FULL_DIMENSIONS: Dict[str, int] = {"dejong": 32, "rosenbrock": 16, "ackley": 128, "rastrigin": 16}
DESK_DIMENSIONS: Dict[str, int] = {"dejong": 8, "rosenbrock": 4, "ackley": 8, "rastrigin": 4}


class Algorithm(Enum):
    """Search algorithms the harness can run"""
    HOOPOE = "hoopoe"
    CUCKOO = "cuckoo"

    @classmethod
    def parse(cls, value: Union[str, 'Algorithm']) -> 'Algorithm':
        if isinstance(value, Algorithm):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            choices = ", ".join(a.value for a in cls)
            raise ConfigError(f"Unknown algorithm '{value}'. Choose one of: {choices}")


def _real(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class ExperimentSpec:
    """Repeated runs of one algorithm on one function"""
    function: str
    dim: int
    algorithm: Algorithm
    config: AlgorithmConfig
    runs: int = 1
    base_seed: int = 0
    success_tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm.parse(self.algorithm))
        if self.runs < 1:
            raise ConfigError(f"runs must be at least 1, got {self.runs}")
        if not 0 <= self.base_seed or self.base_seed + self.runs > MAX_SEED:
            raise ConfigError("seeds base_seed .. base_seed + runs - 1 must fit in 64 bits")
        if not self.success_tolerance > 0:
            raise ConfigError(
                f"success_tolerance must be positive, got {self.success_tolerance}"
            )
        expected = HoopoeConfig if self.algorithm is Algorithm.HOOPOE else CuckooConfig
        if not isinstance(self.config, expected):
            raise ConfigError(
                f"{self.algorithm.value} needs a {expected.__name__}, "
                f"got {type(self.config).__name__}"
            )

    @classmethod
    def build(cls,
              function: str,
              algorithm: Union[str, Algorithm],
              dim: Optional[int] = None,
              runs: int = 1,
              base_seed: int = 0,
              budget: Optional[int] = None,
              success_tolerance: Optional[float] = None,
              **overrides) -> 'ExperimentSpec':
        """
        Resolve an experiment from names and optional overrides.

        Args:
            function: Registered benchmark name
            algorithm: "hoopoe" or "cuckoo"
            dim: Dimension; the registry default when absent
            runs: Number of seeded runs
            base_seed: Run i uses base_seed + i
            budget: max_evaluations per run
            success_tolerance: Absolute distance above the optimum that counts as success
            **overrides: Config fields (alpha, lambda_, theta, population_size,
                         radius, probes_per_region, dig_threshold, nests, p_a, ...)

        Raises:
            UnknownFunctionError: If the function is not registered
            ConfigError: If any setting is invalid
        """
        algorithm = Algorithm.parse(algorithm)
        benchmark = registry(function, dim)
        tolerance = DEFAULT_TOLERANCE if success_tolerance is None else success_tolerance
        settings = dict(
            max_evaluations=DEFAULT_BUDGET if budget is None else budget,
            target_value=benchmark.optimum_value,
            target_tolerance=tolerance,
            seed=base_seed,
        )
        config_type = HoopoeConfig if algorithm is Algorithm.HOOPOE else CuckooConfig
        try:
            config = config_type.for_bounds(benchmark.objective.bounds, **settings, **overrides)
        except TypeError as exc:
            raise ConfigError(f"Invalid {algorithm.value} setting: {exc}") from exc
        return cls(
            function=benchmark.name,
            dim=benchmark.dim,
            algorithm=algorithm,
            config=config,
            runs=runs,
            base_seed=base_seed,
            success_tolerance=tolerance,
        )

    def benchmark(self) -> BenchmarkSpec:
        return registry(self.function, self.dim)

    @property
    def seeds(self) -> range:
        return range(self.base_seed, self.base_seed + self.runs)

    @property
    def budget(self) -> int:
        return self.config.max_evaluations

    def config_for(self, seed: int, benchmark: BenchmarkSpec) -> AlgorithmConfig:
        return replace(
            self.config,
            seed=seed,
            target_value=benchmark.optimum_value,
            target_tolerance=self.success_tolerance,
        )


@dataclass(frozen=True)
class RunRecord:
    """One row of an experiment summary"""
    seed: int
    success: bool
    best_value: float
    evaluations: int
    mode_switch_iteration: Optional[int]

    @classmethod
    def from_result(cls, result: RunResult) -> 'RunRecord':
        return cls(
            seed=result.seed,
            success=result.success,
            best_value=result.best_value,
            evaluations=result.evaluations_used,
            mode_switch_iteration=result.mode_switch_iteration,
        )

    def to_row(self) -> List[str]:
        return [
            str(self.seed),
            "1" if self.success else "0",
            _real(self.best_value),
            str(self.evaluations),
            "" if self.mode_switch_iteration is None else str(self.mode_switch_iteration),
        ]

    @classmethod
    def from_row(cls, row: Sequence[str]) -> 'RunRecord':
        seed, success, best_value, evaluations, switch = row
        return cls(
            seed=int(seed),
            success=success == "1",
            best_value=float(best_value),
            evaluations=int(evaluations),
            mode_switch_iteration=int(switch) if switch else None,
        )


@dataclass(frozen=True, eq=False)
class ExperimentSummary:
    """
    Aggregate over the runs of one experiment.

    Evaluation statistics cover successful runs only; the evaluation counts
    of failed runs are censored at the budget.
    """
    function: str
    dim: int
    algorithm: str
    budget: int
    tolerance: float
    records: Tuple[RunRecord, ...]
    successes: int
    mean_evaluations: float
    std_evaluations: float
    min_evaluations: float
    median_evaluations: float
    max_evaluations: float
    results: Tuple[RunResult, ...] = ()

    @property
    def runs(self) -> int:
        return len(self.records)

    @property
    def success_fraction(self) -> Fraction:
        return Fraction(self.successes, self.runs)

    @property
    def success_rate(self) -> float:
        return self.successes / self.runs

    @property
    def seeds(self) -> Tuple[int, ...]:
        return tuple(r.seed for r in self.records)

    @classmethod
    def from_records(cls,
                     function: str,
                     dim: int,
                     algorithm: str,
                     budget: int,
                     tolerance: float,
                     records: Sequence[RunRecord],
                     results: Sequence[RunResult] = ()) -> 'ExperimentSummary':
        if not records:
            raise HoopoeError("An experiment summary needs at least one run")
        records = tuple(sorted(records, key=lambda r: r.seed))
        results = tuple(sorted(results, key=lambda r: r.seed))
        counts = np.array([r.evaluations for r in records if r.success], dtype=float)
        if counts.size:
            stats = dict(
                mean_evaluations=float(np.mean(counts)),
                std_evaluations=float(np.std(counts, ddof=1)) if counts.size > 1 else 0.0,
                min_evaluations=float(np.min(counts)),
                median_evaluations=float(np.median(counts)),
                max_evaluations=float(np.max(counts)),
            )
        else:
            logger.warning(f"No successful {algorithm} run on {function} (dim {dim})")
            stats = dict.fromkeys(
                ("mean_evaluations", "std_evaluations", "min_evaluations",
                 "median_evaluations", "max_evaluations"),
                math.nan,
            )
        return cls(
            function=function,
            dim=dim,
            algorithm=algorithm,
            budget=budget,
            tolerance=tolerance,
            records=records,
            successes=int(counts.size),
            results=results,
            **stats,
        )

    def footer(self) -> Dict[str, str]:
        return {
            "function": self.function,
            "dim": str(self.dim),
            "algorithm": self.algorithm,
            "runs": str(self.runs),
            "successes": str(self.successes),
            "success_rate": _real(self.success_rate),
            "mean_evaluations": _real(self.mean_evaluations),
            "std_evaluations": _real(self.std_evaluations),
            "min_evaluations": _real(self.min_evaluations),
            "median_evaluations": _real(self.median_evaluations),
            "max_evaluations": _real(self.max_evaluations),
            "budget": str(self.budget),
            "tolerance": _real(self.tolerance),
        }

    def summary_line(self) -> str:
        return (
            f"{self.algorithm} on {self.function} (dim {self.dim}): "
            f"success {self.successes}/{self.runs} ({self.success_rate:.0%}), "
            f"mean evaluations {self.mean_evaluations:.1f} "
            f"(std {self.std_evaluations:.1f})"
        )


@dataclass(frozen=True)
class ComparisonReport:
    """
    Paired comparison of two summaries on the same function and budget.

    Deltas are first minus second; a negative mean_delta means the first
    algorithm stopped earlier on average.
    """
    function: str
    dim: int
    first: str
    second: str
    mean_delta: float
    std_delta: float
    success_rate_delta: float
    wins_first: int
    wins_second: int
    ties: int

    @property
    def sign(self) -> int:
        if math.isnan(self.mean_delta):
            return 0
        return int(np.sign(self.mean_delta))

    @property
    def first_earlier(self) -> bool:
        return self.mean_delta < 0


def _run_one(spec: ExperimentSpec, benchmark: BenchmarkSpec, seed: int) -> RunResult:
    config = spec.config_for(seed, benchmark)
    if spec.algorithm is Algorithm.HOOPOE:
        return HoopoeHeuristic(config, benchmark.objective).run()
    return CuckooSearch(config, benchmark.objective).run()


def _summarize(spec: ExperimentSpec, results: Sequence[RunResult]) -> ExperimentSummary:
    summary = ExperimentSummary.from_records(
        function=spec.function,
        dim=spec.dim,
        algorithm=spec.algorithm.value,
        budget=spec.budget,
        tolerance=spec.success_tolerance,
        records=[RunRecord.from_result(r) for r in results],
        results=results,
    )
    logger.info(summary.summary_line())
    return summary


def run_experiment(spec: ExperimentSpec) -> ExperimentSummary:
    """
    Run every seed of an experiment in order and aggregate.

    Raises:
        UnknownFunctionError: If the function is not registered
        ConfigError: If a per-run config is invalid (before any run starts)
    """
    benchmark = spec.benchmark()
    configs = [spec.config_for(seed, benchmark) for seed in spec.seeds]
    logger.info(
        f"Experiment: {spec.algorithm.value} on {spec.function} (dim {spec.dim}), "
        f"{spec.runs} run(s) from seed {spec.base_seed}"
    )
    results = [_run_one(spec, benchmark, config.seed) for config in configs]
    return _summarize(spec, results)


async def run_experiment_async(spec: ExperimentSpec, concurrency: int = 4) -> ExperimentSummary:
    """
    Run the seeds of an experiment in worker threads.

    Runs share no state, so the summary equals run_experiment(spec).
    """
    if concurrency < 1:
        raise ConfigError(f"concurrency must be at least 1, got {concurrency}")
    benchmark = spec.benchmark()
    for seed in spec.seeds:
        spec.config_for(seed, benchmark)
    semaphore = asyncio.Semaphore(concurrency)

    async def one(seed: int) -> RunResult:
        async with semaphore:
            return await asyncio.to_thread(_run_one, spec, benchmark, seed)

    results = await asyncio.gather(*(one(seed) for seed in spec.seeds))
    return _summarize(spec, results)


def _paired_winner(a: RunRecord, b: RunRecord) -> int:
    if a.success and b.success:
        return int(np.sign(b.evaluations - a.evaluations))
    if a.success != b.success:
        return 1 if a.success else -1
    return 0


def compare(first: ExperimentSummary, second: ExperimentSummary) -> ComparisonReport:
    """
    Compare two summaries seed by seed.

    Raises:
        ComparisonError: If function, dim, budget, tolerance or seeds differ
    """
    for attr in ("function", "dim", "budget", "tolerance", "seeds"):
        if getattr(first, attr) != getattr(second, attr):
            raise ComparisonError(
                f"Summaries differ in {attr}: "
                f"{getattr(first, attr)!r} vs {getattr(second, attr)!r}"
            )
    outcomes = [_paired_winner(a, b) for a, b in zip(first.records, second.records)]
    return ComparisonReport(
        function=first.function,
        dim=first.dim,
        first=first.algorithm,
        second=second.algorithm,
        mean_delta=first.mean_evaluations - second.mean_evaluations,
        std_delta=first.std_evaluations - second.std_evaluations,
        success_rate_delta=first.success_rate - second.success_rate,
        wins_first=outcomes.count(1),
        wins_second=outcomes.count(-1),
        ties=outcomes.count(0),
    )


def _write_rows(path: PathLike, rows: Sequence[Sequence[str]]) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerows(rows)
    except OSError as exc:
        raise OutputError(path, exc.strerror or str(exc)) from exc


def emit_csv(summary: ExperimentSummary, path: PathLike) -> None:
    """
    Write header, one row per run (sorted by seed) and a summary footer.

    The footer's first cell is "summary"; the other cells are key=value.

    Raises:
        OutputError: If the file cannot be written
    """
    rows: List[Sequence[str]] = [SUMMARY_COLUMNS]
    rows.extend(record.to_row() for record in summary.records)
    rows.append([FOOTER_TAG] + [f"{k}={v}" for k, v in summary.footer().items()])
    _write_rows(path, rows)
    logger.info(f"Wrote {summary.runs} run record(s) to {path}")


def load_csv(path: PathLike) -> ExperimentSummary:
    """Read a file written by emit_csv back into a summary (without traces)"""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if len(rows) < 3 or tuple(rows[0]) != SUMMARY_COLUMNS or rows[-1][0] != FOOTER_TAG:
        raise HoopoeError(f"'{path}' is not a summary file")
    fields = dict(cell.split("=", 1) for cell in rows[-1][1:])
    return ExperimentSummary(
        function=fields["function"],
        dim=int(fields["dim"]),
        algorithm=fields["algorithm"],
        budget=int(fields["budget"]),
        tolerance=float(fields["tolerance"]),
        records=tuple(RunRecord.from_row(row) for row in rows[1:-1]),
        successes=int(fields["successes"]),
        mean_evaluations=float(fields["mean_evaluations"]),
        std_evaluations=float(fields["std_evaluations"]),
        min_evaluations=float(fields["min_evaluations"]),
        median_evaluations=float(fields["median_evaluations"]),
        max_evaluations=float(fields["max_evaluations"]),
    )


def emit_trace(result: RunResult, path: PathLike) -> None:
    """
    Write a run trace as CSV for convergence plots.

    Raises:
        OutputError: If the file cannot be written
    """
    rows: List[Sequence[str]] = [TRACE_COLUMNS]
    rows.extend(
        [str(e.iteration), str(e.evaluations), _real(e.best_value), e.mode.value]
        for e in result.trace
    )
    _write_rows(path, rows)


@dataclass(frozen=True, eq=False)
class ProtocolRow:
    """Both algorithms on one function, paired by seed"""
    hoopoe: ExperimentSummary
    cuckoo: ExperimentSummary
    comparison: ComparisonReport

    @property
    def function(self) -> str:
        return self.hoopoe.function

    @property
    def dim(self) -> int:
        return self.hoopoe.dim


def run_protocol(dimensions: Mapping[str, int],
                 runs: int,
                 base_seed: int = 0,
                 budget: Optional[int] = None,
                 success_tolerance: Optional[float] = None,
                 hoopoe_overrides: Optional[Mapping[str, object]] = None,
                 cuckoo_overrides: Optional[Mapping[str, object]] = None) -> List[ProtocolRow]:
    """
    Run hoopoe and cuckoo search on each function with paired seeds.

    Args:
        dimensions: Function name to dimension, e.g. FULL_DIMENSIONS
        runs, base_seed, budget, success_tolerance: As in ExperimentSpec.build
    """
    common = dict(runs=runs, base_seed=base_seed, budget=budget,
                  success_tolerance=success_tolerance)
    specs = []
    for function, dim in dimensions.items():
        specs.append((
            ExperimentSpec.build(function, Algorithm.HOOPOE, dim=dim, **common,
                                 **dict(hoopoe_overrides or {})),
            ExperimentSpec.build(function, Algorithm.CUCKOO, dim=dim, **common,
                                 **dict(cuckoo_overrides or {})),
        ))

    rows = []
    for hoopoe_spec, cuckoo_spec in specs:
        hoopoe = run_experiment(hoopoe_spec)
        cuckoo = run_experiment(cuckoo_spec)
        report = compare(hoopoe, cuckoo)
        logger.info(
            f"{report.function}: hoopoe - cuckoo mean evaluations = {report.mean_delta:.1f} "
            f"(wins {report.wins_first}/{report.wins_second}, ties {report.ties})"
        )
        rows.append(ProtocolRow(hoopoe, cuckoo, report))
    return rows


def _table_cell(summary: ExperimentSummary) -> str:
    mean = "nan" if math.isnan(summary.mean_evaluations) else f"{summary.mean_evaluations:.0f}"
    return f"{mean}({summary.success_rate:.0%})"


def emit_table(rows: Sequence[ProtocolRow], path: PathLike) -> None:
    """
    Write the comparison table: one line per function with "mean(rate%)" cells.

    Raises:
        OutputError: If the file cannot be written
    """
    table: List[Sequence[str]] = [TABLE_COLUMNS]
    for row in rows:
        report = row.comparison
        table.append([
            row.function,
            str(row.dim),
            _table_cell(row.cuckoo),
            _table_cell(row.hoopoe),
            _real(report.mean_delta),
            _real(row.cuckoo.std_evaluations),
            _real(row.hoopoe.std_evaluations),
            str(report.wins_first),
            str(report.wins_second),
            str(report.ties),
        ])
    _write_rows(path, table)
