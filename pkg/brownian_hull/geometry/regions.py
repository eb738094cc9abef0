"""Hull and index-region areas."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from brownian_hull.geometry.raster import (
    CellMask,
    flood_fill_outside,
    hull_mask,
    rasterize_path,
)
from brownian_hull.geometry.winding import WindingField, winding_field

if TYPE_CHECKING:
    from brownian_hull.geometry.grid import GridSpec
    from brownian_hull.sampling.paths import LoopPath


class HullAreas(NamedTuple):
    hull_area: float
    blocked_area: float
    hull_cells: int
    blocked_cells: int


@dataclass(frozen=True)
class RegionAreas:
    """Areas of the hull split by winding number.

    Cell counts are kept alongside the areas; the partition identity
    zero_inside + sum(per_index) + blocked == hull holds exactly on counts, and
    on areas whenever the cell size is a power of two.
    """

    cell_area: float
    hull_cells: int
    blocked_cells: int
    zero_inside_cells: int
    index_cells: dict[int, int] = field(default_factory=dict)

    @property
    def hull_area(self) -> float:
        return self.hull_cells * self.cell_area

    @property
    def blocked_area(self) -> float:
        return self.blocked_cells * self.cell_area

    @property
    def zero_inside(self) -> float:
        return self.zero_inside_cells * self.cell_area

    @property
    def per_index(self) -> dict[int, float]:
        return {n: c * self.cell_area for n, c in sorted(self.index_cells.items())}

    def index_area(self, n: int) -> float:
        if n == 0:
            return self.zero_inside
        return self.index_cells.get(n, 0) * self.cell_area

    def partition_residual(self) -> int:
        """Cells unaccounted for by the partition; zero for consistent rasters."""
        return self.hull_cells - (
            self.zero_inside_cells + sum(self.index_cells.values()) + self.blocked_cells
        )

    def to_dict(self) -> dict[str, object]:
        return {
            "hull_area": self.hull_area,
            "blocked_area": self.blocked_area,
            "zero_inside": self.zero_inside,
            "per_index": {str(n): a for n, a in self.per_index.items()},
        }


def hull_area(path: LoopPath, grid: GridSpec) -> HullAreas:
    """(nx*ny - #outside) * h^2; blocked cells belong to the closed hull."""
    blocked = rasterize_path(path, grid)
    outside = flood_fill_outside(blocked, grid)
    hull_cells = grid.nx * grid.ny - outside.count
    return HullAreas(
        hull_area=hull_cells * grid.cell_area,
        blocked_area=blocked.area(grid),
        hull_cells=hull_cells,
        blocked_cells=blocked.count,
    )


def region_areas(
    w: WindingField,
    hull: CellMask,
    blocked: CellMask,
    grid: GridSpec,
) -> RegionAreas:
    free = ~blocked.bits
    values = w.values
    nonzero = free & (values != 0)
    labels, counts = np.unique(values[nonzero], return_counts=True)
    return RegionAreas(
        cell_area=grid.cell_area,
        hull_cells=hull.count,
        blocked_cells=blocked.count,
        zero_inside_cells=int(np.count_nonzero(free & hull.bits & (values == 0))),
        index_cells={int(n): int(c) for n, c in zip(labels, counts, strict=True)},
    )


@dataclass(frozen=True, eq=False)
class PathAnalysis:
    grid: GridSpec
    blocked: CellMask
    outside: CellMask
    hull: CellMask
    winding: WindingField
    areas: RegionAreas

    def outside_winding_is_zero(self) -> bool:
        return bool(np.all(self.winding.values[self.outside.bits] == 0))


def analyze_path(path: LoopPath, grid: GridSpec) -> PathAnalysis:
    """Rasterize once and derive hull, winding field and region areas."""
    blocked = rasterize_path(path, grid)
    outside = flood_fill_outside(blocked, grid)
    hull = hull_mask(outside)
    winding = winding_field(path, grid, blocked)
    return PathAnalysis(
        grid=grid,
        blocked=blocked,
        outside=outside,
        hull=hull,
        winding=winding,
        areas=region_areas(winding, hull, blocked, grid),
    )
