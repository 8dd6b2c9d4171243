"""
Hoopoe SDK - Hoopoe Heuristic

A single searcher over a fixed archive of points. While the fraction of
closed (visited) regions is at most theta it diversifies with Lévy flights;
afterwards it probes the current region and digs where probing succeeds.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .core import (
    Candidate,
    ConfigError,
    Evaluator,
    MAX_SEED,
    Mode,
    Objective,
    RunTerminatedError,
    SearchStopped,
    make_rng,
    uniform_point,
)
from .levy import LevyFlight, LevyParams, StepSource
from .probing import (
    DigResult,
    ProbeParams,
    ProbeReport,
    ProbeSource,
    descend,
    probe_region,
    should_dig,
)

logger = logging.getLogger(__name__)

DEFAULT_POPULATION = 25
DEFAULT_THETA = 0.2
DEFAULT_BUDGET = 10_000
DEFAULT_TOLERANCE = 1e-3


def check_run_settings(max_evaluations: int,
                       target_tolerance: float,
                       seed: int) -> None:
    """Validation shared by every algorithm config"""
    if max_evaluations < 1:
        raise ConfigError(f"max_evaluations must be positive, got {max_evaluations}")
    if not target_tolerance > 0:
        raise ConfigError(f"target_tolerance must be positive, got {target_tolerance}")
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < MAX_SEED:
        raise ConfigError(f"seed must lie in [0, 2**64), got {seed}")


@dataclass(frozen=True)
class HoopoeConfig:
    """All tunables of one hoopoe run"""
    levy: LevyParams
    probe: ProbeParams
    population_size: int = DEFAULT_POPULATION
    theta: float = DEFAULT_THETA
    max_evaluations: int = DEFAULT_BUDGET
    target_value: float = 0.0
    target_tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ConfigError(
                f"population_size must be positive, got {self.population_size}"
            )
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigError(f"theta must lie in [0, 1], got {self.theta}")
        check_run_settings(self.max_evaluations, self.target_tolerance, self.seed)
        if self.max_evaluations < self.population_size:
            raise ConfigError(
                f"max_evaluations ({self.max_evaluations}) must cover the "
                f"population ({self.population_size})"
            )

    @classmethod
    def for_bounds(cls,
                   bounds,
                   alpha: Optional[float] = None,
                   lambda_: Optional[float] = None,
                   radius: Optional[float] = None,
                   probes_per_region: Optional[int] = None,
                   dig_threshold: Optional[float] = None,
                   dig_budget: Optional[int] = None,
                   shrink_factor: Optional[float] = None,
                   **settings) -> 'HoopoeConfig':
        """
        Build a config with domain-relative defaults.

        Args:
            bounds: Search box the defaults are scaled to
            alpha, lambda_: Lévy overrides
            radius .. shrink_factor: Probe overrides
            **settings: population_size, theta, max_evaluations,
                        target_value, target_tolerance, seed
        """
        levy = LevyParams.for_bounds(bounds, alpha=alpha, lambda_=lambda_)
        probe = ProbeParams.for_bounds(
            bounds,
            radius=radius,
            probes_per_region=probes_per_region,
            dig_threshold=dig_threshold,
            dig_budget=dig_budget,
            shrink_factor=shrink_factor,
        )
        settings = {k: v for k, v in settings.items() if v is not None}
        return cls(levy=levy, probe=probe, **settings)

    def with_seed(self, seed: int) -> 'HoopoeConfig':
        return replace(self, seed=seed)


class Region(NamedTuple):
    """An archive slot and the probe radius around it"""
    index: int
    radius: float


class TraceEntry(NamedTuple):
    """One row of a run trace"""
    iteration: int
    evaluations: int
    best_value: float
    mode: Mode


@dataclass(frozen=True, eq=False)
class RunResult:
    """Outcome of one seeded run, shared by the hoopoe and cuckoo searches"""
    best: Candidate
    evaluations_used: int
    success: bool
    mode_switch_iteration: Optional[int]
    trace: Tuple[TraceEntry, ...]
    algorithm: str = "hoopoe"
    function: str = ""
    seed: int = 0
    levy_truncations: int = 0

    @property
    def best_value(self) -> float:
        return self.best.value

    def same_outcome(self, other: 'RunResult') -> bool:
        """Bit-for-bit equality of everything a run produces"""
        return (self.best == other.best
                and self.evaluations_used == other.evaluations_used
                and self.success == other.success
                and self.mode_switch_iteration == other.mode_switch_iteration
                and self.trace == other.trace
                and self.levy_truncations == other.levy_truncations)


@dataclass
class HoopoeState:
    """Mutable state owned by one run"""
    population: List[Candidate]
    closed: np.ndarray
    current: Region
    evaluator: Evaluator
    rng: np.random.Generator
    flight: LevyFlight
    probe_source: Optional[ProbeSource] = None
    closed_count: int = 0
    iteration: int = 0
    mode_switch_iteration: Optional[int] = None
    terminated: bool = False
    trace: List[TraceEntry] = field(default_factory=list)

    @property
    def best(self) -> Candidate:
        return self.evaluator.best

    @property
    def best_value(self) -> float:
        return self.evaluator.best.value

    @property
    def evaluations(self) -> int:
        return self.evaluator.evaluations

    @property
    def closed_ratio(self) -> float:
        return self.closed_count / len(self.population)

    def record(self, mode: Mode) -> None:
        self.trace.append(
            TraceEntry(self.iteration, self.evaluations, self.best_value, mode)
        )


class HoopoeHeuristic:
    """Runs the hoopoe search for one config and objective"""

    def __init__(self,
                 config: HoopoeConfig,
                 objective: Objective,
                 step_source: Optional[StepSource] = None,
                 probe_source: Optional[ProbeSource] = None,
                 record_history: bool = False):
        """
        Initialize the engine.

        Args:
            config: Run configuration
            objective: Function to minimize
            step_source: Replacement Lévy step generator (tests)
            probe_source: Replacement probe point generator (tests)
            record_history: Keep every objective value on the evaluator
        """
        self.config = config
        self.objective = objective
        self.step_source = step_source
        self.probe_source = probe_source
        self.record_history = record_history

    def initialize(self) -> HoopoeState:
        """Evaluate a uniform archive and pick the first region at random"""
        config = self.config
        rng = make_rng(config.seed)
        evaluator = Evaluator(
            objective=self.objective,
            max_evaluations=config.max_evaluations,
            target_value=config.target_value,
            target_tolerance=config.target_tolerance,
            record_history=self.record_history,
        )
        population = [
            evaluator.evaluate(uniform_point(self.objective.bounds, rng), stop_on_target=False)
            for _ in range(config.population_size)
        ]
        state = HoopoeState(
            population=population,
            closed=np.zeros(config.population_size, dtype=bool),
            current=Region(int(rng.integers(config.population_size)), config.probe.radius),
            evaluator=evaluator,
            rng=rng,
            flight=LevyFlight(config.levy, self.objective.bounds, self.step_source),
            probe_source=self.probe_source,
        )
        state.terminated = evaluator.finished
        state.record(Mode.INIT)
        return state

    def should_intensify(self, state: HoopoeState) -> bool:
        return should_intensify(state, self.config)

    def step(self, state: HoopoeState) -> HoopoeState:
        """
        Close the current region, then probe/dig or fly.

        Raises:
            RunTerminatedError: If the run already terminated
        """
        if state.terminated:
            raise RunTerminatedError("The run has terminated; no further steps")
        state.iteration += 1

        slot = state.current.index
        if not state.closed[slot]:
            state.closed[slot] = True
            state.closed_count += 1

        intensify = self.should_intensify(state)
        if intensify and state.mode_switch_iteration is None:
            state.mode_switch_iteration = state.iteration
            logger.debug(
                f"Switching to intensification at iteration {state.iteration} "
                f"({state.closed_count}/{len(state.population)} regions closed)"
            )

        mode = Mode.PROBE if intensify else Mode.DIVERSIFY
        try:
            if intensify:
                mode = self._intensify(state)
            else:
                self._diversify(state)
        except SearchStopped as exc:
            if isinstance(exc.partial, DigResult):
                mode = Mode.DIG
            self._keep_stopped(state, exc)
            state.terminated = True
            logger.debug(f"Run stopped at iteration {state.iteration}: {exc}")

        if state.evaluator.finished:
            state.terminated = True
        state.record(mode)
        return state

    def _diversify(self, state: HoopoeState) -> None:
        center = state.population[state.current.index]
        position = state.flight.move(center.position, state.rng)
        candidate = state.evaluator.evaluate(position)
        self._replace_worst(state, candidate)

    def _intensify(self, state: HoopoeState) -> Mode:
        params = self.config.probe
        center = state.population[state.current.index]
        report = probe_region(center, params, state.evaluator, state.rng,
                              probe_source=state.probe_source,
                              radius=state.current.radius)
        if not should_dig(report, params):
            self._replace_worst(state, report.best_sample)
            return Mode.PROBE

        start = min(center, report.best_sample, key=lambda c: c.value)
        dug = descend(start, params, state.evaluator, state.rng,
                      probe_source=state.probe_source, radius=state.current.radius)
        self._replace_worst(state, dug.best)
        return Mode.DIG

    def _replace_worst(self, state: HoopoeState, candidate: Candidate) -> None:
        # Every new region starts at the configured radius; only digs contract.
        values = [c.value for c in state.population]
        worst = int(np.argmax(values))
        state.population[worst] = candidate
        state.current = Region(worst, self.config.probe.radius)

    def _keep_stopped(self, state: HoopoeState, exc: SearchStopped) -> None:
        """Archive the best point of an interrupted move and make it current"""
        partial = exc.partial
        if isinstance(partial, DigResult):
            candidate = partial.best
        elif isinstance(partial, ProbeReport):
            candidate = partial.best_sample
        else:
            candidate = exc.candidate
        if candidate is None:
            return
        for index, member in enumerate(state.population):
            if member is candidate:
                state.current = Region(index, self.config.probe.radius)
                return
        self._replace_worst(state, candidate)

    def result(self, state: HoopoeState) -> RunResult:
        best = state.best
        return RunResult(
            best=best,
            evaluations_used=state.evaluations,
            success=state.evaluator.hits_target(best.value),
            mode_switch_iteration=state.mode_switch_iteration,
            trace=tuple(state.trace),
            algorithm="hoopoe",
            function=self.objective.name,
            seed=self.config.seed,
            levy_truncations=state.flight.truncations,
        )

    def run(self) -> RunResult:
        """Step until the budget is spent or the target is reached"""
        logger.info(
            f"Hoopoe run on {self.objective.name} (dim {self.objective.dim}, "
            f"seed {self.config.seed}, budget {self.config.max_evaluations})"
        )
        state = self.initialize()
        while not state.terminated:
            self.step(state)
        result = self.result(state)
        logger.info(
            f"Hoopoe run finished: best {result.best_value:.6g} after "
            f"{result.evaluations_used} evaluations (success={result.success})"
        )
        return result


def initialize(config: HoopoeConfig, objective: Objective, **hooks) -> HoopoeState:
    """Fresh state for a run; see HoopoeHeuristic for the hooks"""
    return HoopoeHeuristic(config, objective, **hooks).initialize()


def should_intensify(state: HoopoeState, config: HoopoeConfig) -> bool:
    """True once the closed fraction strictly exceeds theta"""
    return state.closed_count / config.population_size > config.theta


def step(state: HoopoeState, config: HoopoeConfig, objective: Objective) -> HoopoeState:
    """Advance a run by one iteration, reusing the hooks the state was built with"""
    engine = HoopoeHeuristic(
        config,
        objective,
        step_source=state.flight.step_source,
        probe_source=state.probe_source,
    )
    return engine.step(state)


def run(config: HoopoeConfig, objective: Objective, **hooks) -> RunResult:
    """Full run from a config"""
    return HoopoeHeuristic(config, objective, **hooks).run()
