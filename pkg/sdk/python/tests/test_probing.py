"""
Tests for ground probing and digging
"""

import itertools
import math

import numpy as np
import pytest

from hoopoe import (
    BudgetExhausted,
    Candidate,
    ConfigError,
    Evaluator,
    GridProbeSource,
    ProbeParams,
    ProbeReport,
    TargetReached,
    de_jong,
    dig,
    make_rng,
    probe_region,
    registry,
    should_dig,
)
from hoopoe.probing import descend, uniform_ball


def _center(objective, x):
    x = np.asarray(x, dtype=float)
    return Candidate(x, objective(x), 0)


def _points(*rows):
    points = np.array(rows, dtype=float)

    def source(center, radius, count, rng):
        return points

    return source


def _report(p_s):
    center = Candidate([0.0], 1.0, 0)
    return ProbeReport(center=center, samples=(center,), success_probability=p_s,
                       best_sample=center)


class TestProbeParams:

    def test_domain_relative_defaults(self, dejong2):
        params = ProbeParams.for_bounds(dejong2.bounds)
        assert params.radius == pytest.approx(1.024)
        assert params.probes_per_region == 10
        assert params.dig_budget == 5000
        assert params.min_radius == pytest.approx(1.024e-5)

    def test_none_overrides_are_ignored(self, dejong2):
        params = ProbeParams.for_bounds(dejong2.bounds, radius=None, probes_per_region=4)
        assert params.radius == pytest.approx(1.024)
        assert params.probes_per_region == 4

    @pytest.mark.parametrize("overrides", [
        dict(radius=0.0),
        dict(radius=1.0, probes_per_region=0),
        dict(radius=1.0, dig_threshold=1.5),
        dict(radius=1.0, dig_budget=-1),
        dict(radius=1.0, shrink_factor=1.0),
        dict(radius=1.0, min_radius=-1.0),
    ])
    def test_rejects_invalid(self, overrides):
        with pytest.raises(ConfigError):
            ProbeParams(**overrides)


class TestProbeRegion:

    def test_one_of_four_improves(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        source = _points([0.5, 0.5], [2.0, 2.0], [1.5, 1.5], [1.0, 2.0])
        report = probe_region(center, ProbeParams(radius=1.5, probes_per_region=4),
                              dejong2, rng, probe_source=source)
        assert report.success_probability == 0.25
        assert report.improving == 1
        assert report.best_sample.value == 0.5
        assert len(report.samples) == 4

    def test_nothing_improves_on_the_optimum(self, dejong2, rng):
        center = _center(dejong2, [0.0, 0.0])
        report = probe_region(center, ProbeParams(radius=0.5, probes_per_region=25), dejong2, rng)
        assert report.success_probability == 0.0

    def test_about_half_improves_near_a_bowl_wall(self, dejong2):
        center = _center(dejong2, [1.0, 1.0])
        report = probe_region(center, ProbeParams(radius=0.1, probes_per_region=32),
                              dejong2, make_rng(2))
        assert report.success_probability >= 0.25

    def test_success_probability_is_a_multiple_of_one_over_k(self, rng):
        objective = registry("rastrigin", 3).objective
        for k in (1, 3, 7, 10):
            center = _center(objective, [0.3, -1.2, 2.0])
            report = probe_region(center, ProbeParams(radius=0.5, probes_per_region=k),
                                  objective, rng)
            assert 0.0 <= report.success_probability <= 1.0
            assert report.success_probability * k == pytest.approx(round(report.success_probability * k))

    def test_probes_are_clamped_into_bounds(self, dejong2, rng):
        center = _center(dejong2, [5.12, -5.12])
        report = probe_region(center, ProbeParams(radius=3.0, probes_per_region=50), dejong2, rng)
        for sample in report.samples:
            assert dejong2.bounds.contains(sample.position)

    def test_probes_lie_in_the_ball(self, rng):
        points = uniform_ball(np.array([1.0, -1.0, 0.5]), 0.2, 500, rng)
        distances = np.linalg.norm(points - [1.0, -1.0, 0.5], axis=1)
        assert np.all(distances <= 0.2 + 1e-12)

    def test_budget_stop_carries_partial_report(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        evaluator = Evaluator(dejong2, max_evaluations=3, target_value=-1.0)
        with pytest.raises(BudgetExhausted) as info:
            probe_region(center, ProbeParams(radius=0.5, probes_per_region=5), evaluator, rng)
        partial = info.value.partial
        assert isinstance(partial, ProbeReport)
        assert len(partial.samples) == 3
        assert evaluator.evaluations == 3

    def test_target_stop_report_includes_the_hit(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        evaluator = Evaluator(dejong2, max_evaluations=10, target_tolerance=1e-3)
        source = _points([3.0, 3.0], [0.0, 0.0], [2.0, 2.0])
        with pytest.raises(TargetReached) as info:
            probe_region(center, ProbeParams(radius=5.0, probes_per_region=3), evaluator, rng,
                         probe_source=source)
        partial = info.value.partial
        assert len(partial.samples) == 2
        assert partial.best_sample.value == 0.0
        assert partial.best_sample is info.value.candidate


class TestShouldDig:

    @pytest.mark.parametrize("p_s, threshold, expected", [
        (0.5, 0.5, False),
        (0.51, 0.5, True),
        (0.0, 0.0, False),
        (1.0, 1.0, False),
    ])
    def test_strict_threshold(self, p_s, threshold, expected):
        assert should_dig(_report(p_s), ProbeParams(radius=1.0, dig_threshold=threshold)) is expected


class TestDig:

    def test_zero_budget_returns_center(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        assert dig(center, ProbeParams(radius=0.5, dig_budget=0), dejong2, rng) is center

    def test_descends_the_bowl(self, dejong2):
        center = _center(dejong2, [1.0, 1.0])
        params = ProbeParams(radius=0.5, dig_budget=500)
        assert dig(center, params, dejong2, make_rng(3)).value < 0.05

    @pytest.mark.parametrize("name", ["dejong", "rosenbrock", "ackley", "rastrigin"])
    def test_never_worse_than_the_center(self, name):
        objective = registry(name, 3).objective
        rng = make_rng(17)
        params = ProbeParams.for_bounds(objective.bounds)
        for _ in range(5):
            x = rng.uniform(objective.bounds.lower, objective.bounds.upper)
            center = _center(objective, x)
            assert dig(center, params, objective, rng).value <= center.value

    def test_spends_at_most_the_dig_budget(self, dejong2, rng):
        evaluator = Evaluator(dejong2, max_evaluations=1000, target_value=-1.0)
        center = _center(dejong2, [2.0, -1.0])
        result = descend(center, ProbeParams(radius=0.5, dig_budget=37), evaluator, rng)
        assert result.evaluations == evaluator.evaluations <= 37

    def test_improving_round_widens_up_to_the_start_radius(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        params = ProbeParams(radius=0.5, probes_per_region=1, dig_budget=1)
        result = descend(center, params, dejong2, rng, probe_source=_points([0.5, 0.5]))
        assert result.best.value == 0.5
        assert result.radius == 0.5

    def test_failed_round_shrinks_then_success_widens(self, dejong2, rng):
        rows = iter([[2.0, 2.0], [0.5, 0.5]])

        def source(center, radius, count, rng):
            return np.array([next(rows)])

        center = _center(dejong2, [1.0, 1.0])
        params = ProbeParams(radius=0.5, probes_per_region=1, dig_budget=2)
        result = descend(center, params, dejong2, rng, probe_source=source)
        assert result.rounds == 2
        assert result.radius == pytest.approx(0.25 / math.sqrt(0.5))

    def test_stops_below_the_min_radius(self, dejong2, rng):
        center = _center(dejong2, [1.0, 1.0])
        params = ProbeParams(radius=0.5, probes_per_region=1, dig_budget=1000,
                             min_radius=0.1)
        result = descend(center, params, dejong2, rng, probe_source=_points([3.0, 3.0]))
        # 0.5 -> 0.25 -> 0.125 -> 0.0625
        assert result.rounds == 3
        assert result.radius == 0.0625

    def test_budget_stop_carries_partial_dig(self, dejong2, rng):
        evaluator = Evaluator(dejong2, max_evaluations=15, target_value=-1.0)
        center = _center(dejong2, [2.0, -1.0])
        with pytest.raises(BudgetExhausted) as info:
            descend(center, ProbeParams(radius=0.5, dig_budget=100), evaluator, rng)
        partial = info.value.partial
        assert partial.evaluations == 15
        assert partial.best.value <= center.value


class TestGridOracle:

    def test_grid_size(self):
        assert GridProbeSource(5).size(2) == 13

    def test_dig_matches_brute_force(self, dejong2, rng):
        grid = GridProbeSource(5)
        params = ProbeParams(radius=0.5, probes_per_region=grid.size(2),
                             dig_budget=13 * 500, min_radius=1e-3)
        start = np.array([1.0, 1.0])
        found = descend(_center(dejong2, start), params, dejong2, rng, probe_source=grid)

        best_x, best_v, radius, spent = start, de_jong(start), 0.5, 0
        while spent < 13 * 500 and radius >= 1e-3:
            axis = np.linspace(-radius, radius, 5)
            offsets = [np.array(o) for o in itertools.product(axis, axis)
                       if np.linalg.norm(o) <= radius * (1.0 + 1e-12)]
            values = [de_jong(best_x + o) for o in offsets]
            spent += len(values)
            i = int(np.argmin(values))
            if values[i] < best_v:
                best_x, best_v = best_x + offsets[i], values[i]
                radius = min(radius / math.sqrt(0.5), 0.5)
            else:
                radius *= 0.5

        assert found.best.value == best_v
        np.testing.assert_array_equal(found.best.position, best_x)
        assert found.radius == radius
