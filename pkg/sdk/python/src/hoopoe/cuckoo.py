"""
Hoopoe SDK - Cuckoo Search Baseline

Yang & Deb cuckoo search: every generation each nest lays a cuckoo by a
Lévy flight scaled by its distance to the best nest, the cuckoo takes a
random nest if it is better, and the worst ceil(p_a * nests) nests are
abandoned and rebuilt at random.

Shares the Lévy sampler, clamping, random streams, termination and the
RunResult format with the hoopoe search.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional

try:
    from typing import TypeAlias
except ImportError:  # Python < 3.10
    from typing_extensions import TypeAlias

import numpy as np

from .core import (
    Candidate,
    ConfigError,
    Evaluator,
    Mode,
    Objective,
    SearchStopped,
    make_rng,
    uniform_point,
)
from .engine import (
    DEFAULT_BUDGET,
    DEFAULT_TOLERANCE,
    RunResult,
    TraceEntry,
    check_run_settings,
)
from .levy import LevyFlight, LevyParams, StepSource

logger = logging.getLogger(__name__)

DEFAULT_NESTS = 25
DEFAULT_PA = 0.25
# Dimensionless: cuckoo steps are alpha * step * (best - nest).
DEFAULT_CUCKOO_ALPHA = 1.0

GenerationHandler: TypeAlias = Callable[[int, List[Candidate]], None]


@dataclass(frozen=True)
class CuckooConfig:
    """All tunables of one cuckoo run"""
    levy: LevyParams
    nests: int = DEFAULT_NESTS
    p_a: float = DEFAULT_PA
    max_evaluations: int = DEFAULT_BUDGET
    target_value: float = 0.0
    target_tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0

    def __post_init__(self):
        if self.nests < 1:
            raise ConfigError(f"nests must be positive, got {self.nests}")
        if not 0.0 <= self.p_a <= 1.0:
            raise ConfigError(f"p_a must lie in [0, 1], got {self.p_a}")
        check_run_settings(self.max_evaluations, self.target_tolerance, self.seed)
        if self.max_evaluations < self.nests:
            raise ConfigError(
                f"max_evaluations ({self.max_evaluations}) must cover the "
                f"nests ({self.nests})"
            )

    @classmethod
    def for_bounds(cls,
                   bounds,
                   alpha: Optional[float] = None,
                   lambda_: Optional[float] = None,
                   **settings) -> 'CuckooConfig':
        """Lévy settings for the box; alpha defaults to DEFAULT_CUCKOO_ALPHA"""
        levy = LevyParams.for_bounds(
            bounds,
            alpha=DEFAULT_CUCKOO_ALPHA if alpha is None else alpha,
            lambda_=lambda_,
        )
        settings = {k: v for k, v in settings.items() if v is not None}
        return cls(levy=levy, **settings)

    @property
    def abandoned_per_generation(self) -> int:
        # round() keeps products such as 0.3 * 10 from ceiling up to 4
        return math.ceil(round(self.p_a * self.nests, 9))

    def with_seed(self, seed: int) -> 'CuckooConfig':
        return replace(self, seed=seed)


class CuckooSearch:
    """Runs cuckoo search for one config and objective"""

    def __init__(self,
                 config: CuckooConfig,
                 objective: Objective,
                 step_source: Optional[StepSource] = None,
                 record_history: bool = False):
        self.config = config
        self.objective = objective
        self.step_source = step_source
        self.record_history = record_history
        self.nests: List[Candidate] = []
        self.evaluator: Optional[Evaluator] = None
        self._generation_handlers: List[GenerationHandler] = []

    def on_generation(self, func: GenerationHandler) -> GenerationHandler:
        """Decorator for handlers called with (generation, nests) after each generation"""
        self._generation_handlers.append(func)
        return func

    def run(self) -> RunResult:
        config = self.config
        bounds = self.objective.bounds
        rng = make_rng(config.seed)
        evaluator = Evaluator(
            objective=self.objective,
            max_evaluations=config.max_evaluations,
            target_value=config.target_value,
            target_tolerance=config.target_tolerance,
            record_history=self.record_history,
        )
        self.evaluator = evaluator
        flight = LevyFlight(config.levy, bounds, self.step_source)
        n = config.nests
        n_abandon = config.abandoned_per_generation

        logger.info(
            f"Cuckoo run on {self.objective.name} (dim {self.objective.dim}, "
            f"seed {config.seed}, budget {config.max_evaluations})"
        )
        self.nests = [
            evaluator.evaluate(uniform_point(bounds, rng), stop_on_target=False)
            for _ in range(n)
        ]
        trace = [TraceEntry(0, evaluator.evaluations, evaluator.best.value, Mode.INIT)]

        generation = 0
        while not evaluator.finished:
            generation += 1
            try:
                for i in range(n):
                    position = flight.toward(self.nests[i].position,
                                             evaluator.best.position, rng)
                    cuckoo = evaluator.evaluate(position)
                    j = int(rng.integers(n))
                    if cuckoo.value < self.nests[j].value:
                        self.nests[j] = cuckoo
                if n_abandon:
                    values = np.array([nest.value for nest in self.nests])
                    worst = np.argsort(values, kind="stable")[n - n_abandon:]
                    for j in worst:
                        self.nests[j] = evaluator.evaluate(uniform_point(bounds, rng))
            except SearchStopped as exc:
                logger.debug(f"Run stopped in generation {generation}: {exc}")
            trace.append(
                TraceEntry(generation, evaluator.evaluations, evaluator.best.value,
                           Mode.DIVERSIFY)
            )
            for handler in self._generation_handlers:
                handler(generation, list(self.nests))

        best = evaluator.best
        result = RunResult(
            best=best,
            evaluations_used=evaluator.evaluations,
            success=evaluator.hits_target(best.value),
            mode_switch_iteration=None,
            trace=tuple(trace),
            algorithm="cuckoo",
            function=self.objective.name,
            seed=config.seed,
            levy_truncations=flight.truncations,
        )
        logger.info(
            f"Cuckoo run finished: best {result.best_value:.6g} after "
            f"{result.evaluations_used} evaluations (success={result.success})"
        )
        return result


def cuckoo_run(config: CuckooConfig, objective: Objective, **hooks) -> RunResult:
    """Full cuckoo-search run from a config"""
    return CuckooSearch(config, objective, **hooks).run()
