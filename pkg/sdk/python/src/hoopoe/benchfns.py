"""
Hoopoe SDK - Benchmark Functions

De Jong, Rosenbrock, Ackley and Rastrigin with their usual domains,
default dimensions and known optima. All four are minimized at value 0.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .core import Bounds, ConfigError, DimensionError, Objective, UnknownFunctionError

logger = logging.getLogger(__name__)


def _total(terms: np.ndarray) -> float:
    # Correctly rounded, so the value does not depend on coordinate order
    return math.fsum(terms.tolist())


def _vector(x: Sequence[float], min_size: int = 1) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size < min_size:
        raise DimensionError(
            f"expected at least {min_size} coordinate(s), got {x.size}"
        )
    return x


def de_jong(x: Sequence[float]) -> float:
    """Sum of squares, minimum 0 at the origin"""
    x = _vector(x)
    return _total(x * x)


def rosenbrock(x: Sequence[float]) -> float:
    """Rosenbrock valley, minimum 0 at (1, ..., 1); needs two coordinates"""
    x = _vector(x, min_size=2)
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (head ** 2 - tail) ** 2 + (1.0 - head) ** 2))


def ackley(x: Sequence[float]) -> float:
    """Generalized Ackley function, minimum 0 at the origin"""
    x = _vector(x)
    n = x.size
    root_mean_square = math.sqrt(_total(x * x) / n)
    mean_cosine = _total(np.cos(2.0 * np.pi * x)) / n
    return (-20.0 * math.exp(-0.2 * root_mean_square)
            - math.exp(mean_cosine) + 20.0 + math.e)


def rastrigin(x: Sequence[float]) -> float:
    """Generalized Rastrigin function, minimum 0 at the origin"""
    x = _vector(x)
    return 10.0 * x.size + _total(x ** 2 - 10.0 * np.cos(2.0 * np.pi * x))


@dataclass(frozen=True, eq=False)
class BenchmarkSpec:
    """A registered test function instantiated at one dimension"""
    name: str
    objective: Objective
    default_dim: int
    default_bounds: Bounds
    optimum_position: np.ndarray
    optimum_value: float

    @property
    def dim(self) -> int:
        return self.objective.dim

    def evaluate(self, x: Sequence[float]) -> float:
        return self.objective(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class _Entry:
    function: Callable[[Sequence[float]], float]
    default_dim: int
    box: Tuple[float, float]
    optimum_coordinate: float
    min_dim: int = 1


# Default dimensions follow the comparison protocol: De Jong 32, Rosenbrock 16,
# Ackley 128. Rastrigin is run at "default dimensions" there; 16 is our choice.
_REGISTRY: Dict[str, _Entry] = {
    "dejong": _Entry(de_jong, 32, (-5.12, 5.12), 0.0),
    "rosenbrock": _Entry(rosenbrock, 16, (-5.0, 10.0), 1.0, min_dim=2),
    "ackley": _Entry(ackley, 128, (-32.768, 32.768), 0.0),
    "rastrigin": _Entry(rastrigin, 16, (-5.12, 5.12), 0.0),
}

ALIASES = {
    "de_jong": "dejong",
    "sphere": "dejong",
}


def available_functions() -> Tuple[str, ...]:
    """Names accepted by registry()"""
    return tuple(_REGISTRY)


def registry(name: str,
             dim: Optional[int] = None,
             bounds: Optional[Bounds] = None) -> BenchmarkSpec:
    """
    Look up a benchmark function.

    Args:
        name: One of available_functions() (case-insensitive)
        dim: Dimension override; the registered default when absent
        bounds: Domain override; the literature box at `dim` when absent

    Raises:
        UnknownFunctionError: If the name is not registered
        ConfigError: If the dimension is invalid for the function
    """
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in _REGISTRY:
        raise UnknownFunctionError(name, available_functions())
    entry = _REGISTRY[key]

    dim = entry.default_dim if dim is None else int(dim)
    if dim < entry.min_dim:
        raise ConfigError(f"{key} needs dim >= {entry.min_dim}, got {dim}")

    default_bounds = Bounds.from_box(entry.box[0], entry.box[1], dim)
    if bounds is None:
        bounds = default_bounds
    elif bounds.dim != dim:
        raise ConfigError(f"bounds have dim {bounds.dim}, expected {dim}")

    optimum_position = np.full(dim, entry.optimum_coordinate)
    optimum_position.setflags(write=False)
    objective = Objective(
        name=key,
        evaluate=entry.function,
        bounds=bounds,
        known_optimum_value=0.0,
    )
    logger.debug(f"Resolved benchmark {key} at dim {dim}")
    return BenchmarkSpec(
        name=key,
        objective=objective,
        default_dim=entry.default_dim,
        default_bounds=default_bounds,
        optimum_position=optimum_position,
        optimum_value=0.0,
    )
