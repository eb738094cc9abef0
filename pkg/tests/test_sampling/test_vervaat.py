"""Tests for the lowest-point shift."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brownian_hull.core import LoopKind
from brownian_hull.sampling import (
    EXCURSION_MIDPOINT_MEAN,
    BridgeSpec,
    ExcursionProfile,
    LoopPath,
    excursion_profile,
    lowest_index,
    midpoint_height,
    sample_loop,
    vervaat_transform,
)


class TestLowestIndex:
    def test_first_minimum_wins_ties(self) -> None:
        ys = [0.0, -1.0, 2.0, -1.0, 0.0]
        points = np.column_stack((np.arange(5.0) % 4, ys))
        points[-1] = points[0]
        path = LoopPath(points, LoopKind.GAUSSIAN_BRIDGE)
        assert lowest_index(path) == 1


class TestVervaatTransform:
    @given(seed=st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=100)
    def test_shifted_loop_starts_at_its_minimum(self, seed: int) -> None:
        path = sample_loop(BridgeSpec(200, seed))
        shifted = vervaat_transform(path)
        assert np.array_equal(shifted.points[0], [0.0, 0.0])
        assert np.array_equal(shifted.points[-1], [0.0, 0.0])
        assert shifted.ys.min() == 0.0

    def test_increments_are_rotated(self, bridge: LoopPath) -> None:
        t = lowest_index(bridge)
        shifted = vervaat_transform(bridge)
        expected = np.roll(bridge.increments, -t, axis=0)
        assert np.allclose(shifted.increments, expected, atol=1e-12)

    def test_shift_of_a_shifted_loop_is_identity(self, bridge: LoopPath) -> None:
        once = vervaat_transform(bridge)
        assert vervaat_transform(once).same_as(once)


class TestExcursionProfile:
    def test_target_is_root_two_over_pi(self) -> None:
        assert EXCURSION_MIDPOINT_MEAN == pytest.approx(math.sqrt(2 / math.pi))

    def test_of_heights(self) -> None:
        profile = ExcursionProfile.of_heights([1.0, 2.0, 3.0])
        assert profile.mean == 2.0
        assert profile.stderr == pytest.approx(1.0 / math.sqrt(3))
        assert profile.samples == 3

    @pytest.mark.slow
    def test_midpoint_height_approaches_excursion_mean(self) -> None:
        paths = [vervaat_transform(sample_loop(BridgeSpec(1024, seed=s))) for s in range(2000)]
        profile = excursion_profile(paths)
        assert profile.mean == pytest.approx(EXCURSION_MIDPOINT_MEAN, abs=4 * profile.stderr + 0.02)
        assert all(midpoint_height(p) >= 0 for p in paths)
