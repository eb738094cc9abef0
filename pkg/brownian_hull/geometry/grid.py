"""Uniform cell grids pinned to a path's bounding box."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from brownian_hull.core.types import PlanarPoint
from brownian_hull.errors import ConfigurationError, GeometryError

if TYPE_CHECKING:
    from brownian_hull.sampling.paths import LoopPath

logger = logging.getLogger(__name__)

DEFAULT_MARGIN_CELLS = 3
MAX_DEGENERACY_SHIFTS = 8
# odd sub-cell offset used to move row lines off lattice vertices
DEGENERACY_SHIFT = 0.5 + 2.0**-20


@dataclass(frozen=True)
class GridSpec:
    """nx by ny square cells of side h; cell (i, j) is centered at
    origin + ((i + 1/2) h, (j + 1/2) h). Rasters are indexed [j, i]."""

    origin: PlanarPoint
    cell_size: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if not (self.cell_size > 0 and math.isfinite(self.cell_size)):
            raise ConfigurationError(f"cell_size must be positive, got {self.cell_size}")
        if self.nx < 1 or self.ny < 1:
            raise ConfigurationError(f"grid must have at least one cell, got {self.nx}x{self.ny}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.ny, self.nx

    @property
    def cell_area(self) -> float:
        return self.cell_size * self.cell_size

    @property
    def extent(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) of the grid rectangle."""
        ox, oy = self.origin
        return ox, oy, ox + self.nx * self.cell_size, oy + self.ny * self.cell_size

    def to_grid_units(self, points: np.ndarray) -> np.ndarray:
        """Map plane coordinates to cell units (cell (i, j) spans [i, i+1] x [j, j+1])."""
        return (np.asarray(points, dtype=np.float64) - np.array(self.origin)) / self.cell_size

    def center(self, i: int, j: int) -> PlanarPoint:
        ox, oy = self.origin
        return PlanarPoint(ox + (i + 0.5) * self.cell_size, oy + (j + 0.5) * self.cell_size)

    def centers_x(self) -> np.ndarray:
        return self.origin.x + (np.arange(self.nx) + 0.5) * self.cell_size

    def centers_y(self) -> np.ndarray:
        return self.origin.y + (np.arange(self.ny) + 0.5) * self.cell_size

    def margin_cells(self, path: LoopPath) -> float:
        """Smallest distance, in cells, from the path to the grid edge."""
        uv = self.to_grid_units(path.points)
        return float(
            min(uv[:, 0].min(), uv[:, 1].min(), self.nx - uv[:, 0].max(), self.ny - uv[:, 1].max())
        )

    def to_dict(self) -> dict[str, object]:
        return {
            "origin": [self.origin.x, self.origin.y],
            "cell_size": self.cell_size,
            "nx": self.nx,
            "ny": self.ny,
        }


def has_row_degeneracy(path: LoopPath, grid: GridSpec) -> bool:
    """True when a vertex sits exactly on a row of cell centers."""
    v = grid.to_grid_units(path.points)[:, 1] - 0.5
    return bool(np.any(v == np.floor(v)))


def grid_for_path(
    path: LoopPath,
    cells_per_unit: float,
    margin_cells: int = DEFAULT_MARGIN_CELLS,
) -> GridSpec:
    """Grid re-derived from the path's bounding box at fixed resolution."""
    if cells_per_unit <= 0:
        raise ConfigurationError(f"cells_per_unit must be positive, got {cells_per_unit}")
    if margin_cells < 2:
        raise ConfigurationError(f"margin must be at least 2 cells, got {margin_cells}")
    h = 1.0 / cells_per_unit
    xmin, ymin, xmax, ymax = path.bounding_box
    ox = xmin - margin_cells * h
    oy = ymin - margin_cells * h
    for attempt in range(MAX_DEGENERACY_SHIFTS + 1):
        nx = math.floor((xmax - ox) / h) + margin_cells + 1
        ny = math.floor((ymax - oy) / h) + margin_cells + 1
        grid = GridSpec(PlanarPoint(ox, oy), h, nx, ny)
        if not has_row_degeneracy(path, grid):
            if attempt:
                logger.debug("grid origin shifted %d time(s) off vertex rows", attempt)
            return grid
        ox -= DEGENERACY_SHIFT * h
        oy -= DEGENERACY_SHIFT * h
    raise GeometryError("could not move cell-center rows off the path vertices")
