"""Tests for Yor's winding-index law."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brownian_hull.analytic import (
    IndexLawParams,
    index_distribution,
    index_law_tail,
    index_probability,
    yor_psi,
)
from brownian_hull.errors import DomainError

radii = st.floats(min_value=0.1, max_value=3.0)


class TestPsi:
    def test_odd_in_x(self) -> None:
        assert yor_psi(0.8, -3 * math.pi).value == pytest.approx(-yor_psi(0.8, 3 * math.pi).value)

    def test_underflow_is_flagged(self) -> None:
        psi = yor_psi(30.0, math.pi)
        assert psi.underflow
        assert psi.value == 0.0

    def test_bounded_by_one_half_of_damping_free_integral(self) -> None:
        # x/pi * int dt/(t^2 + x^2) over the half line is 1/2
        assert 0.0 < yor_psi(0.1, math.pi).value < 0.5

    def test_rejects_zero_argument(self) -> None:
        with pytest.raises(DomainError):
            yor_psi(1.0, 0.0)


class TestIndexLaw:
    @given(r=radii)
    @settings(max_examples=15, deadline=None)
    def test_probabilities_and_tail_sum_to_one(self, r: float) -> None:
        law = index_distribution(r, 20)
        assert math.fsum(law.values()) + index_law_tail(r, 20) == pytest.approx(1.0, abs=1e-10)

    @given(r=radii, n=st.integers(min_value=1, max_value=6))
    @settings(max_examples=30, deadline=None)
    def test_symmetric_in_n(self, r: float, n: int) -> None:
        assert index_probability(IndexLawParams(r, n)) == pytest.approx(
            index_probability(IndexLawParams(r, -n)), abs=1e-15
        )

    def test_far_points_are_rarely_wound(self) -> None:
        assert index_probability(IndexLawParams(3.0, 0)) > 0.999

    def test_winding_once_beats_winding_twice(self) -> None:
        law = index_distribution(0.5, 3)
        assert law[0] > law[1] > law[2] > law[3] > 0.0

    def test_tail_shrinks(self) -> None:
        assert index_law_tail(0.5, 5) < index_law_tail(0.5, 2) < index_law_tail(0.5, 0)

    def test_rejects_non_positive_radius(self) -> None:
        with pytest.raises(DomainError):
            IndexLawParams(0.0, 1)
