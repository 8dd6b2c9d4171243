"""
Hoopoe SDK - Lévy Flights

Heavy-tailed steps drawn with Mantegna's algorithm, the absolute move
s' = s + alpha * step of the hoopoe search and the move relative to an
anchor, s' = s + alpha * step * (anchor - s), of cuckoo search.
"""

import logging
from dataclasses import dataclass
from math import gamma, pi, sin, sqrt
from typing import Callable, Optional, Sequence, Tuple

try:
    from typing import TypeAlias
except ImportError:  # Python < 3.10
    from typing_extensions import TypeAlias

import numpy as np

from .core import Bounds, ConfigError, DimensionError, repair

logger = logging.getLogger(__name__)

# Displacements are capped at this many domain widths per coordinate.
TRUNCATION_WIDTHS = 10.0

DEFAULT_LAMBDA = 1.5
DEFAULT_ALPHA_FRACTION = 0.01


@dataclass(frozen=True)
class LevyParams:
    """Step scale alpha and tail exponent lambda of the flight"""
    alpha: float
    lambda_: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if not 1.0 < self.lambda_ <= 3.0:
            raise ConfigError(f"lambda must lie in (1, 3], got {self.lambda_}")

    @classmethod
    def for_bounds(cls,
                   bounds: Bounds,
                   alpha: Optional[float] = None,
                   lambda_: Optional[float] = None) -> 'LevyParams':
        """Defaults relative to the domain: alpha = 0.01 x width, lambda = 1.5"""
        return cls(
            alpha=DEFAULT_ALPHA_FRACTION * bounds.mean_width if alpha is None else alpha,
            lambda_=DEFAULT_LAMBDA if lambda_ is None else lambda_,
        )

    @property
    def stability(self) -> float:
        """Stability index beta = lambda - 1 of the symmetric stable law"""
        return self.lambda_ - 1.0


StepSource: TypeAlias = Callable[[LevyParams, int, np.random.Generator], np.ndarray]


def mantegna_sigma(beta: float) -> float:
    """Scale of the numerator Gaussian in Mantegna's algorithm"""
    num = gamma(1 + beta) * sin(pi * beta / 2)
    den = gamma((1 + beta) / 2) * beta * 2 ** ((beta - 1) / 2)
    return (num / den) ** (1 / beta)


def sample_step(params: LevyParams, dim: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw `dim` independent symmetric heavy-tailed deviates.

    The stability index is beta = lambda - 1, so the survival function of
    |step| decays like u^(1 - lambda). At beta = 2 the law is Gaussian.
    """
    if dim < 1:
        raise ConfigError(f"dim must be positive, got {dim}")
    beta = params.stability
    if beta >= 2.0:
        return rng.normal(0.0, sqrt(2.0), size=dim)

    u = rng.normal(0.0, mantegna_sigma(beta), size=dim)
    v = rng.normal(0.0, 1.0, size=dim)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        return u / np.abs(v) ** (1.0 / beta)


def _displacement(current: np.ndarray,
                  params: LevyParams,
                  bounds: Bounds,
                  rng: np.random.Generator,
                  step_source: Optional[StepSource],
                  scale: Optional[np.ndarray] = None) -> Tuple[np.ndarray, int]:
    if current.ndim != 1 or current.size != bounds.dim:
        raise DimensionError(
            f"position has shape {current.shape}, bounds expect ({bounds.dim},)"
        )
    source = step_source or sample_step
    step = np.asarray(source(params, bounds.dim, rng), dtype=float)
    if step.shape != current.shape:
        raise DimensionError(
            f"step has shape {step.shape}, expected {current.shape}"
        )

    limit = TRUNCATION_WIDTHS * bounds.width
    with np.errstate(over="ignore", invalid="ignore"):
        displacement = params.alpha * step
        if scale is not None:
            displacement = displacement * scale
    displacement = np.nan_to_num(displacement, nan=0.0, posinf=np.inf, neginf=-np.inf)
    truncated = int(np.count_nonzero(np.abs(displacement) > limit))
    return np.clip(displacement, -limit, limit), truncated


def levy_move(current: Sequence[float],
              params: LevyParams,
              bounds: Bounds,
              rng: np.random.Generator,
              step_source: Optional[StepSource] = None) -> np.ndarray:
    """
    Move `current` by alpha * step and clamp the result into bounds.

    Args:
        current: Starting point (in bounds)
        params: Step scale and tail exponent
        bounds: Search box
        rng: Random stream of the run
        step_source: Replacement for sample_step (tests inject fixed steps)

    Raises:
        DimensionError: If current or the step does not match bounds.dim
    """
    x = np.asarray(current, dtype=float)
    displacement, _ = _displacement(x, params, bounds, rng, step_source)
    return repair(x + displacement, bounds)


class LevyFlight:
    """Lévy move bound to one run, counting truncated coordinates"""

    def __init__(self,
                 params: LevyParams,
                 bounds: Bounds,
                 step_source: Optional[StepSource] = None):
        self.params = params
        self.bounds = bounds
        self.step_source = step_source
        self.truncations = 0

    def move(self, current: Sequence[float], rng: np.random.Generator) -> np.ndarray:
        """current + alpha * step, clamped"""
        return self._apply(np.asarray(current, dtype=float), rng, None)

    def toward(self,
               current: Sequence[float],
               anchor: Sequence[float],
               rng: np.random.Generator) -> np.ndarray:
        """
        current + alpha * step * (anchor - current), clamped.

        The step is taken coordinate-wise relative to the distance to
        `anchor`, so alpha is dimensionless and the moves shrink as the
        points gather around the anchor.
        """
        x = np.asarray(current, dtype=float)
        target = np.asarray(anchor, dtype=float)
        if target.shape != x.shape:
            raise DimensionError(
                f"anchor has shape {target.shape}, expected {x.shape}"
            )
        return self._apply(x, rng, target - x)

    def _apply(self,
               x: np.ndarray,
               rng: np.random.Generator,
               scale: Optional[np.ndarray]) -> np.ndarray:
        displacement, truncated = _displacement(
            x, self.params, self.bounds, rng, self.step_source, scale
        )
        if truncated:
            self.truncations += truncated
            logger.debug(f"Truncated {truncated} Lévy coordinate(s)")
        return repair(x + displacement, self.bounds)
