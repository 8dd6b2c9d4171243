"""
Hoopoe SDK - Ground Probing

Intensification around a point: probe k neighbors in a ball, measure the
fraction that improve on the center (the success probability p_s) and dig,
i.e. run a contracting local search, when p_s clears the dig threshold.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

try:
    from typing import TypeAlias
except ImportError:  # Python < 3.10
    from typing_extensions import TypeAlias

import numpy as np

from .core import (
    Bounds,
    Candidate,
    ConfigError,
    Evaluator,
    Objective,
    SearchStopped,
    as_evaluator,
    repair,
)

logger = logging.getLogger(__name__)

DEFAULT_RADIUS_FRACTION = 0.1
DEFAULT_PROBES = 10
DEFAULT_DIG_THRESHOLD = 0.3
DEFAULT_DIG_EVALS_PER_DIM = 2500
DEFAULT_SHRINK = 0.5
DEFAULT_MIN_RADIUS = 1e-12
# Digs started by for_bounds stop below this fraction of the mean width.
DEFAULT_MIN_RADIUS_FRACTION = 1e-6

ProbeSource: TypeAlias = Callable[[np.ndarray, float, int, np.random.Generator], np.ndarray]


@dataclass(frozen=True)
class ProbeParams:
    """Probe radius, probe count and dig settings"""
    radius: float
    probes_per_region: int = DEFAULT_PROBES
    dig_threshold: float = DEFAULT_DIG_THRESHOLD
    dig_budget: int = 0
    shrink_factor: float = DEFAULT_SHRINK
    min_radius: float = DEFAULT_MIN_RADIUS

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigError(f"radius must be positive, got {self.radius}")
        if self.probes_per_region < 1:
            raise ConfigError(
                f"probes_per_region must be at least 1, got {self.probes_per_region}"
            )
        if not 0.0 <= self.dig_threshold <= 1.0:
            raise ConfigError(
                f"dig_threshold must lie in [0, 1], got {self.dig_threshold}"
            )
        if self.dig_budget < 0:
            raise ConfigError(f"dig_budget must be non-negative, got {self.dig_budget}")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ConfigError(
                f"shrink_factor must lie in (0, 1), got {self.shrink_factor}"
            )
        if self.min_radius < 0:
            raise ConfigError(f"min_radius must be non-negative, got {self.min_radius}")

    @classmethod
    def for_bounds(cls, bounds: Bounds, **overrides) -> 'ProbeParams':
        """
        Defaults relative to the domain: r = 0.1 x width, a dig budget of
        2500 x dim and a dig floor of 1e-6 x width.
        """
        values = {
            "radius": DEFAULT_RADIUS_FRACTION * bounds.mean_width,
            "dig_budget": DEFAULT_DIG_EVALS_PER_DIM * bounds.dim,
            "min_radius": DEFAULT_MIN_RADIUS_FRACTION * bounds.mean_width,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True, eq=False)
class ProbeReport:
    """Outcome of probing one region"""
    center: Candidate
    samples: Tuple[Candidate, ...]
    success_probability: float
    best_sample: Candidate

    @property
    def improving(self) -> int:
        return sum(1 for s in self.samples if s.value < self.center.value)

    @classmethod
    def from_samples(cls, center: Candidate, samples: Tuple[Candidate, ...]) -> 'ProbeReport':
        improving = sum(1 for s in samples if s.value < center.value)
        best = min(samples, key=lambda s: s.value)
        return cls(
            center=center,
            samples=samples,
            success_probability=improving / len(samples),
            best_sample=best,
        )


@dataclass(frozen=True, eq=False)
class DigResult:
    """Outcome of one dig"""
    best: Candidate
    radius: float
    rounds: int
    evaluations: int


def uniform_ball(center: np.ndarray,
                 radius: float,
                 count: int,
                 rng: np.random.Generator) -> np.ndarray:
    """Draw `count` points uniformly in the closed Euclidean ball"""
    dim = center.size
    directions = rng.standard_normal((count, dim))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    radii = radius * rng.random(count) ** (1.0 / dim)
    return center + directions / norms * radii[:, None]


class GridProbeSource:
    """
    Exhaustive probe source: every point of a regular grid inside the ball.

    Used to check digs against brute-force search; the random stream is
    ignored.
    """

    def __init__(self, points_per_axis: int):
        if points_per_axis < 2:
            raise ConfigError("points_per_axis must be at least 2")
        self.points_per_axis = points_per_axis

    def offsets(self, radius: float, dim: int) -> np.ndarray:
        axis = np.linspace(-radius, radius, self.points_per_axis)
        mesh = np.meshgrid(*([axis] * dim), indexing="ij")
        grid = np.stack([m.reshape(-1) for m in mesh], axis=1)
        inside = np.linalg.norm(grid, axis=1) <= radius * (1.0 + 1e-12)
        return grid[inside]

    def size(self, dim: int) -> int:
        return len(self.offsets(1.0, dim))

    def __call__(self,
                 center: np.ndarray,
                 radius: float,
                 count: int,
                 rng: np.random.Generator) -> np.ndarray:
        return center + self.offsets(radius, center.size)


def probe_region(center: Candidate,
                 params: ProbeParams,
                 objective: Union[Objective, Evaluator],
                 rng: np.random.Generator,
                 probe_source: Optional[ProbeSource] = None,
                 radius: Optional[float] = None,
                 count: Optional[int] = None) -> ProbeReport:
    """
    Probe the ball around `center` and report the success probability.

    Args:
        center: Region center (in bounds)
        params: Probe settings; `radius` and `count` override the ball radius
                and number of probes for this call
        objective: Objective or the run's Evaluator
        rng: Random stream of the run
        probe_source: Replacement for uniform_ball (tests inject a grid)

    Raises:
        SearchStopped: If the run's budget or target stops the probing; the
                       report over the probes evaluated so far, the hitting
                       one included, is attached as `partial` (None if none was evaluated)
    """
    evaluator = as_evaluator(objective)
    bounds = evaluator.objective.bounds
    radius = params.radius if radius is None else radius
    count = params.probes_per_region if count is None else count
    source = probe_source or uniform_ball

    points = np.asarray(source(center.position, radius, count, rng), dtype=float)[:count]
    samples = []
    try:
        for point in points:
            samples.append(evaluator.evaluate(repair(point, bounds)))
    except SearchStopped as exc:
        if exc.candidate is not None:
            samples.append(exc.candidate)
        exc.partial = ProbeReport.from_samples(center, tuple(samples)) if samples else None
        raise
    return ProbeReport.from_samples(center, tuple(samples))


def should_dig(report: ProbeReport, params: ProbeParams) -> bool:
    """Dig only when p_s strictly exceeds the threshold"""
    return report.success_probability > params.dig_threshold


def descend(center: Candidate,
            params: ProbeParams,
            objective: Union[Objective, Evaluator],
            rng: np.random.Generator,
            probe_source: Optional[ProbeSource] = None,
            radius: Optional[float] = None) -> DigResult:
    """
    Contracting local search from `center` within params.dig_budget evaluations.

    Each round probes the ball around the incumbent. An improving round moves
    to the best probe and widens the radius by 1 / sqrt(shrink_factor), never
    past the starting radius; a round without improvement shrinks the radius
    by shrink_factor. The dig ends when the budget is spent or the radius falls
    below min_radius. The returned value never exceeds center.value.
    """
    evaluator = as_evaluator(objective)
    radius = params.radius if radius is None else radius
    start = radius
    best = center
    spent = 0
    rounds = 0
    try:
        while spent < params.dig_budget and radius >= params.min_radius:
            count = min(params.probes_per_region, params.dig_budget - spent)
            report = probe_region(best, params, evaluator, rng,
                                  probe_source=probe_source, radius=radius, count=count)
            spent += len(report.samples)
            rounds += 1
            if report.best_sample.value < best.value:
                best = report.best_sample
                radius = min(radius / math.sqrt(params.shrink_factor), start)
            else:
                radius *= params.shrink_factor
    except SearchStopped as exc:
        partial = exc.partial
        if partial is not None:
            spent += len(partial.samples)
            if partial.best_sample.value < best.value:
                best = partial.best_sample
        exc.partial = DigResult(best, radius, rounds, spent)
        raise
    logger.debug(
        f"Dig finished after {rounds} round(s), {spent} evaluation(s): "
        f"{center.value:.6g} -> {best.value:.6g}"
    )
    return DigResult(best, radius, rounds, spent)


def dig(center: Candidate,
        params: ProbeParams,
        objective: Union[Objective, Evaluator],
        rng: np.random.Generator,
        probe_source: Optional[ProbeSource] = None) -> Candidate:
    """Dig from `center` and return the best candidate found"""
    return descend(center, params, objective, rng, probe_source=probe_source).best
