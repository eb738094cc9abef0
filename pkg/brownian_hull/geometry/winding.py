"""Winding numbers: scanline field over cell centers and the angle-sum oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from brownian_hull.geometry.raster import rasterize_path

if TYPE_CHECKING:
    from collections.abc import Iterable

    from brownian_hull.core.types import PlanarPoint
    from brownian_hull.geometry.grid import GridSpec
    from brownian_hull.geometry.raster import CellMask
    from brownian_hull.sampling.paths import LoopPath

ON_PATH = int(np.iinfo(np.int32).min)


@dataclass(frozen=True, eq=False)
class WindingField:
    values: np.ndarray  # int32, shape (ny, nx); blocked cells hold ON_PATH
    on_path_sentinel: int = ON_PATH

    @property
    def blocked(self) -> np.ndarray:
        return self.values == self.on_path_sentinel

    def indices(self) -> list[int]:
        """Distinct winding numbers present off the path."""
        return sorted(int(n) for n in np.unique(self.values[~self.blocked]))


def crossing_table(path: LoopPath, grid: GridSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Signed crossings of the center rows y = j + 1/2 (grid units).

    A segment crosses row j iff min(v0, v1) <= j + 1/2 < max(v0, v1); the sign
    is +1 for upward segments. Returns (row, crossing abscissa, sign).
    """
    uv = grid.to_grid_units(path.points)
    u0, v0 = uv[:-1, 0], uv[:-1, 1]
    u1, v1 = uv[1:, 0], uv[1:, 1]
    moving = v0 != v1
    u0, v0, u1, v1 = u0[moving], v0[moving], u1[moving], v1[moving]
    vmin = np.minimum(v0, v1)
    vmax = np.maximum(v0, v1)
    j_lo = np.ceil(vmin - 0.5).astype(np.int64)
    j_hi = np.ceil(vmax - 0.5).astype(np.int64) - 1
    counts = np.maximum(j_hi - j_lo + 1, 0)

    seg = np.repeat(np.arange(len(counts)), counts)
    first = np.repeat(np.cumsum(counts) - counts, counts)
    rows = j_lo[seg] + (np.arange(len(seg)) - first)
    s = (rows + 0.5 - v0[seg]) / (v1[seg] - v0[seg])
    u_cross = u0[seg] + s * (u1[seg] - u0[seg])
    signs = np.where(v1[seg] > v0[seg], 1, -1).astype(np.int64)
    return rows, u_cross, signs


def center_windings(path: LoopPath, grid: GridSpec) -> np.ndarray:
    """Winding number at every cell center by horizontal scanlines, path cells included.

    The winding at a center is the sum of the signs of the crossings strictly
    to its right on the same row.
    """
    nx, ny = grid.nx, grid.ny
    rows, u_cross, signs = crossing_table(path, grid)
    # number of centers strictly left of each crossing
    k = np.clip(np.ceil(u_cross - 0.5), 0, nx).astype(np.int64)
    acc = np.bincount(rows * (nx + 1) + k, weights=signs, minlength=ny * (nx + 1))
    acc = acc.reshape(ny, nx + 1).astype(np.int64)
    from_right = np.cumsum(acc[:, ::-1], axis=1)[:, ::-1]
    return from_right[:, 1:].astype(np.int32)


def winding_field(
    path: LoopPath,
    grid: GridSpec,
    blocked: CellMask | None = None,
) -> WindingField:
    """Scanline windings with the cells of `blocked` set to the ON_PATH sentinel."""
    values = center_windings(path, grid)
    if blocked is None:
        blocked = rasterize_path(path, grid)
    values[blocked.bits] = ON_PATH
    return WindingField(values)


def angle_winding(path: LoopPath, z: PlanarPoint | tuple[float, float]) -> int:
    """Winding of the loop around z by accumulating the turning angle."""
    d = path.points - np.asarray(z, dtype=np.float64)
    a, b = d[:-1], d[1:]
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    total = float(np.arctan2(cross, dot).sum())
    return round(total / (2.0 * math.pi))


def angle_windings(path: LoopPath, points: Iterable[tuple[float, float]]) -> list[int]:
    return [angle_winding(path, z) for z in points]


def shoelace_area(path: LoopPath) -> float:
    """Signed area, positive for counterclockwise loops."""
    x, y = path.xs, path.ys
    return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def distance_to_path(path: LoopPath, z: PlanarPoint | tuple[float, float]) -> float:
    """Euclidean distance from z to the polygonal loop."""
    p = np.asarray(z, dtype=np.float64)
    a = path.points[:-1]
    seg = path.increments
    length2 = np.einsum("ij,ij->i", seg, seg)
    rel = p - a
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(length2 > 0, np.einsum("ij,ij->i", rel, seg) / length2, 0.0)
    s = np.clip(s, 0.0, 1.0)
    nearest = a + s[:, None] * seg
    return float(np.hypot(*(nearest - p).T).min())
