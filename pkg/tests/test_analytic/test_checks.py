"""Tests for the analytic check table."""

import math

import pytest

from brownian_hull.analytic import CheckRow, decomposition_check, verify_analytic


class TestCheckRow:
    def test_compare_within_tolerance(self) -> None:
        row = CheckRow.compare("x", 1.0 + 1e-10, 1.0, 1e-9)
        assert row.passed
        assert row.abs_error == pytest.approx(1e-10)

    def test_compare_outside_tolerance(self) -> None:
        assert not CheckRow.compare("x", 1.1, 1.0, 1e-9).passed

    def test_json_uses_pass_key(self) -> None:
        data = CheckRow.compare("x", 1.0, 1.0, 1e-9).as_json()
        assert data["pass"] is True
        assert set(data) == {"check_name", "computed", "target", "abs_error", "tolerance", "pass"}


def test_decomposition_identity() -> None:
    row = decomposition_check()
    assert row.passed
    assert row.target == pytest.approx(math.pi / 5)


def test_every_analytic_check_passes() -> None:
    rows = verify_analytic()
    failed = [row.check_name for row in rows if not row.passed]
    assert failed == []
    names = {row.check_name for row in rows}
    assert "expected_hull_area" in names
    assert "expected_area_index[n=10]" in names
    assert "f_series[x=2.5]" in names
    assert "index_law_sum[r=0.7]" in names
