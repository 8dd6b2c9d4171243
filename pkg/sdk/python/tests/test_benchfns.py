"""
Tests for the benchmark functions and the registry
"""

import math

import numpy as np
import pytest

from hoopoe import (
    Bounds,
    ConfigError,
    DimensionError,
    UnknownFunctionError,
    ackley,
    available_functions,
    de_jong,
    make_rng,
    rastrigin,
    registry,
    rosenbrock,
)


@pytest.mark.parametrize("x, expected", [
    ([0.0, 0.0, 0.0], 0.0),
    ([1.0, 2.0, 3.0], 14.0),
    ([-2.0], 4.0),
])
def test_de_jong(x, expected):
    assert de_jong(x) == expected


@pytest.mark.parametrize("x, expected", [
    ([1.0, 1.0, 1.0, 1.0], 0.0),
    ([0.0, 0.0], 1.0),
    ([-1.0, 1.0], 4.0),
])
def test_rosenbrock(x, expected):
    assert rosenbrock(x) == expected


def test_ackley_spot_values():
    assert abs(ackley([0.0, 0.0, 0.0])) < 1e-12
    assert abs(ackley(np.zeros(128))) < 1e-12
    assert ackley([1.0, 1.0]) == pytest.approx(20.0 * (1.0 - math.exp(-0.2)), abs=1e-9)
    assert ackley([1.0, 1.0]) == pytest.approx(3.625384938, abs=1e-6)


@pytest.mark.parametrize("x, expected", [
    ([0.0, 0.0, 0.0], 0.0),
    ([1.0, 1.0], 2.0),
    ([0.5], 20.25),
])
def test_rastrigin(x, expected):
    assert rastrigin(x) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("function", [de_jong, ackley, rastrigin])
def test_empty_vector_rejected(function):
    with pytest.raises(DimensionError):
        function([])


def test_rosenbrock_needs_two_coordinates():
    with pytest.raises(DimensionError):
        rosenbrock([1.0])


@pytest.mark.parametrize("name", ["dejong", "rosenbrock", "ackley", "rastrigin"])
def test_non_negative_over_the_default_box(name):
    spec = registry(name)
    bounds = spec.objective.bounds
    rng = make_rng(7)
    lowest = math.inf
    for _ in range(10):
        points = rng.uniform(bounds.lower, bounds.upper, size=(10_000, spec.dim))
        lowest = min(lowest, min(spec.evaluate(x) for x in points))
    assert lowest >= -1e-9


@pytest.mark.parametrize("function", [de_jong, rastrigin])
def test_separable_functions_add_over_blocks(function):
    rng = make_rng(11)
    for _ in range(200):
        x = rng.uniform(-5.12, 5.12, size=int(rng.integers(1, 9)))
        y = rng.uniform(-5.12, 5.12, size=int(rng.integers(1, 9)))
        joined = function(np.concatenate([x, y]))
        assert joined == pytest.approx(function(x) + function(y), rel=1e-12)


@pytest.mark.parametrize("function", [de_jong, ackley, rastrigin])
def test_coordinate_order_does_not_matter(function):
    rng = make_rng(5)
    for _ in range(200):
        x = rng.uniform(-5.12, 5.12, size=int(rng.integers(2, 33)))
        assert function(rng.permutation(x)) == function(x)


@pytest.mark.parametrize("name", ["dejong", "rosenbrock", "ackley", "rastrigin"])
def test_registered_optimum(name):
    spec = registry(name)
    assert abs(spec.evaluate(spec.optimum_position) - spec.optimum_value) < 1e-9
    assert spec.objective.known_optimum_value == spec.optimum_value == 0.0
    assert spec.objective.bounds.contains(spec.optimum_position)


class TestRegistry:

    def test_default_dimensions(self):
        assert registry("dejong").dim == 32
        assert registry("ackley").dim == 128
        assert registry("rosenbrock").dim == 16
        assert registry("rastrigin").dim == 16

    def test_explicit_dimension(self):
        spec = registry("rosenbrock", 2)
        assert spec.dim == 2
        np.testing.assert_array_equal(spec.optimum_position, [1.0, 1.0])
        assert spec.optimum_value == 0.0

    def test_literature_boxes(self):
        assert registry("dejong", 2).objective.bounds == Bounds.from_box(-5.12, 5.12, 2)
        assert registry("ackley", 2).objective.bounds == Bounds.from_box(-32.768, 32.768, 2)
        assert registry("rosenbrock", 2).objective.bounds == Bounds.from_box(-5.0, 10.0, 2)

    def test_aliases_and_case(self):
        assert registry("Sphere", 3).name == "dejong"
        assert registry("de_jong", 3).name == "dejong"
        assert registry(" ACKLEY ", 3).name == "ackley"

    def test_unknown_name_lists_functions(self):
        with pytest.raises(UnknownFunctionError) as info:
            registry("nosuch")
        message = str(info.value)
        assert "nosuch" in message
        for name in available_functions():
            assert name in message

    def test_rosenbrock_dimension_one_rejected(self):
        with pytest.raises(ConfigError):
            registry("rosenbrock", 1)

    def test_bounds_override(self):
        box = Bounds.from_box(-1.0, 1.0, 3)
        assert registry("rastrigin", 3, bounds=box).objective.bounds == box
        with pytest.raises(ConfigError):
            registry("rastrigin", 2, bounds=box)
