"""Tests for the marked-point Loewner evolution."""

import math

import numpy as np
import pytest

from brownian_hull.analytic import KappaAngle, schramm_right_prob
from brownian_hull.core import PlanarPoint, Side, derive_seed
from brownian_hull.errors import ConfigurationError, DomainError
from brownian_hull.sle import (
    LoewnerRun,
    estimate_side_probability,
    evolve_point_side,
    evolve_point_sides,
    martingale_profile,
    sweep_angles,
)

RESTRICTION = 8 / 3


def run_at(theta: float, seed: int = 0, **kwargs: float) -> LoewnerRun:
    return LoewnerRun(RESTRICTION, PlanarPoint.polar(1.0, theta), seed=seed, **kwargs)


class TestLoewnerRun:
    def test_rejects_kappa_above_four(self) -> None:
        with pytest.raises(DomainError):
            LoewnerRun(5.0, PlanarPoint(0.0, 1.0))

    def test_rejects_points_on_the_real_line(self) -> None:
        with pytest.raises(DomainError):
            LoewnerRun(2.0, PlanarPoint(1.0, 0.0))

    def test_rejects_wide_exit_band(self) -> None:
        with pytest.raises(ConfigurationError):
            LoewnerRun(2.0, PlanarPoint(0.0, 1.0), theta_exit=1.0)

    def test_default_horizon_scales_with_modulus(self) -> None:
        assert LoewnerRun(2.0, PlanarPoint(0.0, 2.0)).horizon == pytest.approx(4e4)
        assert LoewnerRun(2.0, PlanarPoint(0.0, 2.0), t_max=5.0).horizon == 5.0

    def test_with_seed(self) -> None:
        run = run_at(1.0).with_seed(42)
        assert run.seed == 42
        assert run.theta0 == pytest.approx(1.0)


class TestEvolution:
    def test_single_run_is_reproducible(self) -> None:
        run = run_at(math.pi / 3, seed=5)
        assert evolve_point_side(run) == evolve_point_side(run)

    def test_single_run_stops_in_a_band(self) -> None:
        result = evolve_point_side(run_at(math.pi / 2, seed=9))
        assert result.side in (Side.RIGHT, Side.LEFT)
        if result.side is Side.RIGHT:
            assert result.theta_final <= 0.01
        else:
            assert result.theta_final >= math.pi - 0.01
        assert result.steps > 0

    def test_lane_k_matches_single_run_with_derived_seed(self) -> None:
        run = run_at(math.pi / 4, seed=17)
        batch = evolve_point_sides(run, 6)
        for k in range(6):
            single = evolve_point_side(run.with_seed(derive_seed(run.seed, k)))
            lane = batch.result(k)
            assert lane.side is single.side
            assert lane.steps == single.steps
            assert lane.theta_final == pytest.approx(single.theta_final, abs=1e-9)

    def test_worker_count_does_not_change_results(self) -> None:
        run = run_at(2.0, seed=3)
        serial = evolve_point_sides(run, 4500)
        parallel = evolve_point_sides(run, 4500, n_jobs=2)
        assert np.array_equal(serial.codes, parallel.codes)
        assert np.array_equal(serial.steps, parallel.steps)
        assert np.array_equal(serial.theta_final, parallel.theta_final)

    def test_max_step_caps_every_step(self) -> None:
        result = evolve_point_side(run_at(math.pi / 2, seed=1, max_step=1e-3, t_max=1.0))
        assert result.t_stop <= result.steps * 1e-3 * (1 + 1e-12)


class TestSideProbability:
    def test_matches_schramm_at_restriction_kappa(self) -> None:
        theta = math.pi / 3
        report = estimate_side_probability(run_at(theta, seed=2), 4000)
        assert report.target == pytest.approx(0.75)
        assert report.mean == pytest.approx(0.75, abs=3 * report.stderr)
        assert report.excluded == 0

    def test_other_kappa(self) -> None:
        run = LoewnerRun(2.0, PlanarPoint.polar(1.0, 2.0), seed=4)
        report = estimate_side_probability(run, 4000)
        target = schramm_right_prob(KappaAngle(2.0, 2.0))
        assert report.target == pytest.approx(target)
        assert report.mean == pytest.approx(target, abs=3 * report.stderr)

    def test_capped_step_rule(self) -> None:
        report = estimate_side_probability(run_at(math.pi / 3, seed=6, max_step=1e-3), 1000)
        assert report.config["max_step"] == 1e-3
        assert report.excluded == 0
        assert report.mean == pytest.approx(0.75, abs=3 * report.stderr)

    def test_depends_only_on_the_angle(self) -> None:
        z0 = PlanarPoint.polar(1.0, 2.2)
        near = estimate_side_probability(LoewnerRun(RESTRICTION, z0, seed=12), 3000)
        far = estimate_side_probability(LoewnerRun(RESTRICTION, PlanarPoint(4 * z0.x, 4 * z0.y), seed=12), 3000)
        assert far.target == pytest.approx(near.target)
        assert abs(far.mean - near.mean) <= 3 * math.hypot(near.stderr, far.stderr)
        for report in (near, far):
            assert report.mean == pytest.approx(report.target, abs=3 * report.stderr)

    def test_short_horizon_leaves_lanes_undecided(self) -> None:
        report = estimate_side_probability(run_at(math.pi / 2, t_max=1e-4), 200)
        assert report.excluded == 200
        assert report.warnings
        assert math.isnan(report.mean)

    def test_needs_a_hundred_samples(self) -> None:
        with pytest.raises(ConfigurationError):
            estimate_side_probability(run_at(1.0), 50)


class TestMartingale:
    def test_mean_of_f_theta_is_constant(self) -> None:
        run = run_at(math.pi / 2, seed=8)
        rows = martingale_profile(run, [0.1, 1.0], 3000)
        assert rows[0].t == 0.0
        assert rows[0].mean == pytest.approx(0.5)
        for row in rows[1:]:
            assert row.mean == pytest.approx(0.5, abs=3 * row.stderr)

    def test_rejects_non_positive_times(self) -> None:
        with pytest.raises(ConfigurationError):
            martingale_profile(run_at(1.0), [0.0], 100)


def test_sweep_is_monotone() -> None:
    sweep = sweep_angles(RESTRICTION, [math.pi / 6, math.pi / 2, 5 * math.pi / 6], 1500, master_seed=1)
    assert len(sweep.reports) == 3
    assert sweep.monotone
    assert sweep.violations == []
    assert sweep.band_sensitivity == {}
