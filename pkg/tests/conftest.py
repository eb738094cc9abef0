"""Shared pytest fixtures for brownian_hull tests."""

import math

import numpy as np
import pytest

from brownian_hull.config import ExperimentConfig
from brownian_hull.core import LoopKind
from brownian_hull.geometry import GridSpec, grid_for_path
from brownian_hull.sampling import BridgeSpec, LoopPath, sample_loop


@pytest.fixture
def unit_square() -> LoopPath:
    """Counterclockwise unit square with corners on the integer lattice."""
    points = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])
    return LoopPath(points, LoopKind.GAUSSIAN_BRIDGE)


@pytest.fixture
def square_grid(unit_square: LoopPath) -> GridSpec:
    return grid_for_path(unit_square, 16.0)


@pytest.fixture
def double_circle() -> LoopPath:
    """Circle of radius 1/2 traversed twice counterclockwise."""
    angles = np.linspace(0.0, 4.0 * math.pi, 129)
    points = 0.5 * np.column_stack((np.cos(angles), np.sin(angles)))
    points[-1] = points[0]
    return LoopPath(points, LoopKind.GAUSSIAN_BRIDGE)


@pytest.fixture
def bridge() -> LoopPath:
    return sample_loop(BridgeSpec(512, seed=7))


@pytest.fixture
def small_config() -> ExperimentConfig:
    return ExperimentConfig(samples=24, steps=512, cells_per_unit=32.0, master_seed=11)
