"""
Hoopoe SDK

Hoopoe heuristic global optimization, a cuckoo-search baseline, benchmark
functions and a seeded experiment harness.
"""

__version__ = "0.2.0"

from .core import (
    # Primitives
    Bounds,
    Candidate,
    Objective,
    Evaluator,
    Mode,
    MAX_SEED,
    make_rng,
    repair,
    uniform_point,

    # Exceptions
    HoopoeError,
    ConfigError,
    DimensionError,
    UnknownFunctionError,
    SearchStopped,
    BudgetExhausted,
    TargetReached,
    RunTerminatedError,
    ComparisonError,
    OutputError,
)

from .benchfns import (
    BenchmarkSpec,
    ackley,
    available_functions,
    de_jong,
    rastrigin,
    registry,
    rosenbrock,
)

from .levy import (
    LevyFlight,
    LevyParams,
    levy_move,
    sample_step,
)

from .probing import (
    DigResult,
    GridProbeSource,
    ProbeParams,
    ProbeReport,
    dig,
    probe_region,
    should_dig,
)

from .engine import (
    HoopoeConfig,
    HoopoeHeuristic,
    HoopoeState,
    RunResult,
    TraceEntry,
    initialize,
    run,
    should_intensify,
    step,
)

from .cuckoo import (
    CuckooConfig,
    CuckooSearch,
    cuckoo_run,
)

from .harness import (
    Algorithm,
    ComparisonReport,
    ExperimentSpec,
    ExperimentSummary,
    ProtocolRow,
    RunRecord,
    compare,
    emit_csv,
    emit_table,
    emit_trace,
    load_csv,
    run_experiment,
    run_experiment_async,
    run_protocol,
)

from .log import configure_logging

__all__ = [
    # Version
    "__version__",

    # Primitives
    "Bounds",
    "Candidate",
    "Objective",
    "Evaluator",
    "Mode",
    "MAX_SEED",
    "make_rng",
    "repair",
    "uniform_point",

    # Benchmarks
    "BenchmarkSpec",
    "ackley",
    "available_functions",
    "de_jong",
    "rastrigin",
    "registry",
    "rosenbrock",

    # Lévy flights
    "LevyFlight",
    "LevyParams",
    "levy_move",
    "sample_step",

    # Probing and digging
    "DigResult",
    "GridProbeSource",
    "ProbeParams",
    "ProbeReport",
    "dig",
    "probe_region",
    "should_dig",

    # Hoopoe heuristic
    "HoopoeConfig",
    "HoopoeHeuristic",
    "HoopoeState",
    "RunResult",
    "TraceEntry",
    "initialize",
    "run",
    "should_intensify",
    "step",

    # Cuckoo search
    "CuckooConfig",
    "CuckooSearch",
    "cuckoo_run",

    # Experiments
    "Algorithm",
    "ComparisonReport",
    "ExperimentSpec",
    "ExperimentSummary",
    "ProtocolRow",
    "RunRecord",
    "compare",
    "emit_csv",
    "emit_table",
    "emit_trace",
    "load_csv",
    "run_experiment",
    "run_experiment_async",
    "run_protocol",

    # Logging
    "configure_logging",

    # Exceptions
    "HoopoeError",
    "ConfigError",
    "DimensionError",
    "UnknownFunctionError",
    "SearchStopped",
    "BudgetExhausted",
    "TargetReached",
    "RunTerminatedError",
    "ComparisonError",
    "OutputError",
]
