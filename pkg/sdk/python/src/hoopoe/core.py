"""
Hoopoe SDK - Core Types

Shared domain types, the objective contract, seeded random streams,
bounds handling and the evaluation counter every search algorithm uses.
"""

import logging
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64


class Mode(Enum):
    """Trace mode tags"""
    INIT = "init"
    DIVERSIFY = "diversify"
    PROBE = "probe"
    DIG = "dig"

    @property
    def intensifying(self) -> bool:
        return self in (Mode.PROBE, Mode.DIG)


class HoopoeError(Exception):
    """Base exception for the Hoopoe SDK"""
    pass


class ConfigError(HoopoeError, ValueError):
    """Invalid bounds, parameters or configuration"""
    pass


class DimensionError(HoopoeError, ValueError):
    """Vector length does not match the expected dimension"""
    pass


class UnknownFunctionError(HoopoeError, KeyError):
    """Benchmark name not present in the registry"""

    def __init__(self, name: str, available: Sequence[str]):
        self.name = name
        self.available = list(available)
        super().__init__(
            f"Unknown function '{name}'. Available: {', '.join(self.available)}"
        )

    def __str__(self) -> str:
        return self.args[0]


class SearchStopped(HoopoeError):
    """
    Raised by the Evaluator when a run has to stop.

    `candidate` is the evaluation that hit the target (None when the budget
    ran out before evaluating); callers attach their own `partial` result.
    """

    def __init__(self, message: str, partial: Any = None, candidate: Any = None):
        super().__init__(message)
        self.partial = partial
        self.candidate = candidate


class BudgetExhausted(SearchStopped):
    """The evaluation budget is spent"""
    pass


class TargetReached(SearchStopped):
    """An evaluation reached the target value within tolerance"""
    pass


class RunTerminatedError(HoopoeError):
    """A terminated run was asked to keep stepping"""
    pass


class ComparisonError(HoopoeError, ValueError):
    """Two experiment summaries were produced under different conditions"""
    pass


class OutputError(HoopoeError, OSError):
    """A result file could not be written"""

    def __init__(self, path: Any, reason: str):
        self.path = str(path)
        super().__init__(f"Cannot write '{self.path}': {reason}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class Bounds:
    """Per-dimension box constraints"""
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).reshape(-1)
        upper = np.asarray(self.upper, dtype=float).reshape(-1)
        if lower.size == 0:
            raise ConfigError("Bounds need at least one dimension")
        if lower.shape != upper.shape:
            raise ConfigError(
                f"lower and upper differ in length ({lower.size} vs {upper.size})"
            )
        if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
            raise ConfigError("Bounds must be finite")
        if np.any(lower >= upper):
            raise ConfigError("lower must be strictly below upper in every dimension")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def from_box(cls, low: float, high: float, dim: int) -> 'Bounds':
        """Hypercube [low, high]^dim"""
        if dim < 1:
            raise ConfigError(f"dim must be positive, got {dim}")
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def mean_width(self) -> float:
        return float(np.mean(self.width))

    def contains(self, position: Sequence[float]) -> bool:
        x = np.asarray(position, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bounds):
            return NotImplemented
        return (np.array_equal(self.lower, other.lower)
                and np.array_equal(self.upper, other.upper))

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes()))


@dataclass(frozen=True)
class Candidate:
    """A point of the search space with its objective value"""
    position: np.ndarray
    value: float
    eval_index: int

    def __post_init__(self):
        position = np.array(self.position, dtype=float).reshape(-1)
        position.setflags(write=False)
        object.__setattr__(self, "position", position)
        object.__setattr__(self, "value", float(self.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Candidate):
            return NotImplemented
        return (np.array_equal(self.position, other.position)
                and self.value == other.value
                and self.eval_index == other.eval_index)


@dataclass(frozen=True)
class Objective:
    """A deterministic function to minimize over a box"""
    name: str
    evaluate: Callable[[np.ndarray], float]
    bounds: Bounds
    known_optimum_value: Optional[float] = None

    def __call__(self, position: np.ndarray) -> float:
        return float(self.evaluate(position))

    @property
    def dim(self) -> int:
        return self.bounds.dim


def make_rng(seed: int) -> np.random.Generator:
    """
    Create the random stream of one run.

    Two generators built from the same seed produce identical sequences.

    Raises:
        ConfigError: If the seed is not a 64-bit unsigned integer
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < MAX_SEED:
        raise ConfigError(f"seed must lie in [0, 2**64), got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def _as_vector(position: Sequence[float], bounds: Bounds) -> np.ndarray:
    x = np.asarray(position, dtype=float)
    if x.ndim != 1 or x.size != bounds.dim:
        raise DimensionError(
            f"position has shape {x.shape}, bounds expect ({bounds.dim},)"
        )
    return x


def repair(position: Sequence[float], bounds: Bounds) -> np.ndarray:
    """Clamp every coordinate into [lower, upper]"""
    x = _as_vector(position, bounds)
    return np.clip(x, bounds.lower, bounds.upper)


def uniform_point(bounds: Bounds, rng: np.random.Generator) -> np.ndarray:
    """Draw a point uniformly in the box"""
    return rng.uniform(bounds.lower, bounds.upper)


@dataclass
class Evaluator:
    """
    Counts evaluations against a budget and keeps the best-so-far.

    Every objective value produced during a run goes through evaluate(),
    so the budget, the target test and the best-so-far share one place.
    """
    objective: Objective
    max_evaluations: int
    target_value: float = 0.0
    target_tolerance: float = 1e-3
    record_history: bool = False
    evaluations: int = 0
    best: Optional[Candidate] = None
    history: List[float] = field(default_factory=list)

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ConfigError(
                f"max_evaluations must be positive, got {self.max_evaluations}"
            )

    @property
    def remaining(self) -> int:
        return self.max_evaluations - self.evaluations

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.max_evaluations

    @property
    def target_hit(self) -> bool:
        return self.best is not None and self.hits_target(self.best.value)

    @property
    def finished(self) -> bool:
        return self.exhausted or self.target_hit

    def hits_target(self, value: float) -> bool:
        return value <= self.target_value + self.target_tolerance

    def evaluate(self, position: np.ndarray, stop_on_target: bool = True) -> Candidate:
        """
        Evaluate one position.

        Args:
            position: An in-bounds point
            stop_on_target: Raise TargetReached when this evaluation hits the target

        Raises:
            BudgetExhausted: If no evaluation is left (nothing is evaluated)
            TargetReached: If the new value reaches the target
        """
        if self.exhausted:
            logger.debug(f"{self.objective.name}: budget of {self.max_evaluations} spent")
            raise BudgetExhausted(
                f"Evaluation budget of {self.max_evaluations} exhausted"
            )
        value = self.objective(position)
        self.evaluations += 1
        candidate = Candidate(position, value, self.evaluations)
        if self.record_history:
            self.history.append(candidate.value)
        if self.best is None or candidate.value < self.best.value:
            self.best = candidate
        if stop_on_target and self.hits_target(candidate.value):
            logger.debug(
                f"{self.objective.name}: target hit at evaluation {self.evaluations}"
            )
            raise TargetReached(
                f"Target reached at evaluation {self.evaluations} "
                f"(value {candidate.value:.3e})",
                candidate=candidate,
            )
        return candidate


def as_evaluator(objective: Union[Objective, Evaluator]) -> Evaluator:
    """Wrap a bare objective in an evaluator with no budget and no target"""
    if isinstance(objective, Evaluator):
        return objective
    return Evaluator(
        objective=objective,
        max_evaluations=sys.maxsize,
        target_value=-math.inf,
        target_tolerance=0.0,
    )
