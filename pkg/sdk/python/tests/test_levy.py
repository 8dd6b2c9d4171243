"""
Tests for the Lévy step sampler and moves
"""

import numpy as np
import pytest

from hoopoe import (
    Bounds,
    ConfigError,
    DimensionError,
    LevyFlight,
    LevyParams,
    levy_move,
    make_rng,
    sample_step,
)
from hoopoe.levy import mantegna_sigma

BOX = Bounds.from_box(-5.12, 5.12, 2)


class TestLevyParams:

    @pytest.mark.parametrize("alpha, lambda_", [(0.0, 1.5), (-1.0, 1.5), (0.1, 1.0), (0.1, 3.5)])
    def test_rejects_invalid(self, alpha, lambda_):
        with pytest.raises(ConfigError):
            LevyParams(alpha, lambda_)

    def test_domain_relative_defaults(self):
        params = LevyParams.for_bounds(BOX)
        assert params.alpha == pytest.approx(0.1024)
        assert params.lambda_ == 1.5
        assert params.stability == 0.5

    def test_overrides(self):
        params = LevyParams.for_bounds(BOX, alpha=2.0, lambda_=3.0)
        assert (params.alpha, params.lambda_) == (2.0, 3.0)


def test_mantegna_sigma_at_three_halves():
    assert mantegna_sigma(1.5) == pytest.approx(0.6966, abs=1e-4)


class TestSampleStep:

    def test_deterministic(self):
        params = LevyParams(1.0)
        np.testing.assert_array_equal(
            sample_step(params, 16, make_rng(5)), sample_step(params, 16, make_rng(5))
        )

    def test_symmetric_median(self):
        steps = sample_step(LevyParams(1.0, 2.5), 100_000, make_rng(11))
        assert abs(np.median(steps)) < 0.05

    def test_sign_balance(self):
        steps = sample_step(LevyParams(1.0, 1.5), 100_000, make_rng(12))
        assert abs(np.mean(steps > 0) - 0.5) < 0.01

    def test_hill_estimate_of_tail_index(self):
        magnitudes = np.sort(np.abs(sample_step(LevyParams(1.0, 1.5), 100_000, make_rng(7))))[::-1]
        k = 1000
        hill = 1.0 / np.mean(np.log(magnitudes[:k] / magnitudes[k]))
        assert abs(hill - 0.5) <= 0.2

    def test_heavy_tail_percentile_ratio(self):
        magnitudes = np.abs(sample_step(LevyParams(1.0, 1.5), 100_000, make_rng(8)))
        ratio = np.percentile(magnitudes, 99.9) / np.percentile(magnitudes, 99)
        assert ratio > 5

    def test_gaussian_control_fails_ratio(self):
        magnitudes = np.abs(sample_step(LevyParams(1.0, 3.0), 100_000, make_rng(8)))
        ratio = np.percentile(magnitudes, 99.9) / np.percentile(magnitudes, 99)
        assert ratio < 1.6

    def test_gaussian_limit_is_not_degenerate(self):
        steps = sample_step(LevyParams(1.0, 3.0), 50_000, make_rng(4))
        assert np.std(steps) == pytest.approx(np.sqrt(2.0), rel=0.05)

    def test_rejects_empty_dimension(self):
        with pytest.raises(ConfigError):
            sample_step(LevyParams(1.0), 0, make_rng(0))


class TestLevyMove:

    def test_injected_step(self, rng, fixed_step):
        moved = levy_move([1.0, 2.0], LevyParams(0.1), BOX, rng, step_source=fixed_step(10.0, -10.0))
        np.testing.assert_allclose(moved, [2.0, 1.0])

    def test_zero_step_is_identity(self, rng, zero_step):
        moved = levy_move([1.5, -3.0], LevyParams(0.1), BOX, rng, step_source=zero_step)
        np.testing.assert_array_equal(moved, [1.5, -3.0])

    def test_corner_absorbs_outward_step(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(0.1), BOX, step_source=fixed_step(1e6, 1e6))
        moved = flight.move([5.12, 5.12], rng)
        np.testing.assert_array_equal(moved, [5.12, 5.12])
        assert flight.truncations == 2

    def test_non_finite_step_is_truncated(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(0.1), BOX, step_source=fixed_step(np.inf, 0.0))
        moved = flight.move([0.0, 0.0], rng)
        np.testing.assert_array_equal(moved, [5.12, 0.0])
        assert flight.truncations == 1

    def test_result_stays_in_bounds(self):
        rng = make_rng(99)
        params = LevyParams(5.0, 1.2)
        x = np.zeros(2)
        for _ in range(500):
            x = levy_move(x, params, BOX, rng)
            assert BOX.contains(x)

    def test_displacement_scales_with_alpha(self):
        wide = Bounds.from_box(-1e9, 1e9, 8)
        origin = np.zeros(8)
        single = levy_move(origin, LevyParams(0.5, 2.5), wide, make_rng(21))
        double = levy_move(origin, LevyParams(1.0, 2.5), wide, make_rng(21))
        np.testing.assert_array_equal(double, 2.0 * single)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(DimensionError):
            levy_move([1.0, 2.0, 3.0], LevyParams(0.1), BOX, rng)

    def test_step_shape_mismatch(self, rng, fixed_step):
        with pytest.raises(DimensionError):
            levy_move([1.0, 2.0], LevyParams(0.1), BOX, rng, step_source=fixed_step(1.0))


class TestRelativeMove:

    def test_step_scales_with_distance_to_anchor(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(1.0), BOX, step_source=fixed_step(0.5, 0.25))
        np.testing.assert_array_equal(flight.toward([0.0, 0.0], [2.0, -4.0], rng), [1.0, -1.0])

    def test_anchor_is_a_fixed_point(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(3.0), BOX, step_source=fixed_step(7.0, -2.0))
        np.testing.assert_array_equal(flight.toward([1.5, -2.0], [1.5, -2.0], rng), [1.5, -2.0])

    def test_infinite_step_at_the_anchor_stays_put(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(1.0), BOX, step_source=fixed_step(np.inf, 1.0))
        np.testing.assert_array_equal(flight.toward([1.0, 0.0], [1.0, 2.0], rng), [1.0, 2.0])
        assert flight.truncations == 0

    def test_clamped_into_bounds(self, rng, fixed_step):
        flight = LevyFlight(LevyParams(1.0), BOX, step_source=fixed_step(-10.0, 0.0))
        np.testing.assert_array_equal(flight.toward([4.0, 0.0], [5.0, 0.0], rng), [-5.12, 0.0])

    def test_anchor_shape_mismatch(self, rng):
        flight = LevyFlight(LevyParams(1.0), BOX)
        with pytest.raises(DimensionError):
            flight.toward([0.0, 0.0], [1.0, 2.0, 3.0], rng)
