"""Tests for report models and run identifiers."""

import math

import pytest

from brownian_hull.reports import (
    EstimateReport,
    SampleSummary,
    config_hash,
    generate_run_id,
    provenance,
)


class TestSampleSummary:
    def test_mean_and_standard_error(self) -> None:
        summary = SampleSummary.of([1.0, 2.0, 3.0, 4.0])
        assert summary.mean == 2.5
        assert summary.stderr == pytest.approx(math.sqrt(5 / 3 / 4))
        assert summary.samples == 4

    def test_single_value(self) -> None:
        summary = SampleSummary.of([0.7])
        assert summary.mean == 0.7
        assert summary.stderr == 0.0

    def test_empty(self) -> None:
        summary = SampleSummary.of([])
        assert summary.samples == 0
        assert math.isnan(summary.mean)

    def test_compensated_sum(self) -> None:
        assert SampleSummary.of([1e16, 1.0, -1e16, 1.0]).mean == 0.5

    def test_proportion(self) -> None:
        summary = SampleSummary.of_proportion(30, 40)
        assert summary.mean == 0.75
        assert summary.stderr == pytest.approx(math.sqrt(0.75 * 0.25 / 40))


class TestEstimateReport:
    def test_within_by_standard_errors(self) -> None:
        report = EstimateReport(quantity="q", mean=1.02, stderr=0.01, samples=100, target=1.0)
        assert report.deviation == pytest.approx(0.02)
        assert report.within(3.0)
        assert not report.within(1.0)

    def test_within_by_margin(self) -> None:
        report = EstimateReport(quantity="q", mean=1.05, stderr=0.001, samples=100, target=1.0)
        assert not report.within(3.0)
        assert report.within(3.0, margin=0.06)

    def test_no_target(self) -> None:
        report = EstimateReport(quantity="q", mean=1.0, stderr=0.1, samples=10)
        assert math.isnan(report.deviation)
        assert report.within()

    def test_build_stamps_provenance(self) -> None:
        report = EstimateReport.build(
            "hull_area",
            SampleSummary.of([0.5, 0.7]),
            target=0.6,
            config={"samples": 2},
            master_seed=3,
        )
        assert report.mean == pytest.approx(0.6)
        assert report.config_hash == config_hash({"samples": 2})
        assert report.run_id == generate_run_id(3)
        assert report.provenance == provenance(3)


class TestRunIdentity:
    def test_run_id_is_deterministic(self) -> None:
        assert generate_run_id(42) == generate_run_id(42)
        assert len(generate_run_id(42).split("-")) >= 3

    def test_run_ids_differ_by_seed(self) -> None:
        assert generate_run_id(1) != generate_run_id(2)

    def test_config_hash_ignores_key_order(self) -> None:
        assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})
        assert config_hash({"a": 1}) != config_hash({"a": 2})
