"""
Shared fixtures for the Hoopoe SDK tests
"""

import logging
import os
import sys

import numpy as np
import pytest

# Allow running the suite from a source checkout without installing
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hoopoe import Objective, make_rng, registry  # noqa: E402


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def dejong2() -> Objective:
    """De Jong on [-5.12, 5.12]^2"""
    return registry("dejong", 2).objective


@pytest.fixture
def unreachable():
    """Target far below every optimum, so only the budget ends a run"""
    return -1.0


@pytest.fixture
def fixed_step():
    """Factory for step sources that always return the same vector"""

    def make(*values: float):
        step = np.array(values, dtype=float)

        def source(params, dim, rng):
            return step.copy()

        return source

    return make


@pytest.fixture
def zero_step():
    def source(params, dim, rng):
        return np.zeros(dim)

    return source


@pytest.fixture(autouse=True)
def restore_logger():
    """Entry points install handlers on the package logger; undo that per test"""
    logger = logging.getLogger("hoopoe")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    logger.handlers[:] = handlers
    logger.setLevel(level)
    logger.propagate = propagate
