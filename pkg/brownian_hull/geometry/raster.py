"""Supercover rasterization and the outside flood fill."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
from scipy import ndimage

from brownian_hull.errors import GeometryError

if TYPE_CHECKING:
    from brownian_hull.geometry.grid import GridSpec
    from brownian_hull.sampling.paths import LoopPath

# closed cells are widened by this many cell units so that segments through a
# corner touch all four cells despite rounding
TOUCH_TOLERANCE = 1e-9

# 4x4 candidate block around each piece, as (di, dj) pairs
_DI = np.repeat(np.arange(4), 4)
_DJ = np.tile(np.arange(4), 4)
_CHUNK = 1 << 16


class MaskRole(Enum):
    BLOCKED = "blocked"
    OUTSIDE = "outside"
    HULL = "hull"


@dataclass(frozen=True, eq=False)
class CellMask:
    bits: np.ndarray  # bool, shape (ny, nx)
    role: MaskRole

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def area(self, grid: GridSpec) -> float:
        return self.count * grid.cell_area


def boundary_ring(shape: tuple[int, int]) -> np.ndarray:
    ring = np.zeros(shape, dtype=bool)
    ring[0, :] = ring[-1, :] = True
    ring[:, 0] = ring[:, -1] = True
    return ring


def _split_segments(uv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cut every segment into pieces no longer than one cell per axis."""
    a, b = uv[:-1], uv[1:]
    d = b - a
    pieces = np.maximum(1, np.ceil(np.abs(d).max(axis=1))).astype(np.int64)
    seg = np.repeat(np.arange(len(a)), pieces)
    first = np.repeat(np.cumsum(pieces) - pieces, pieces)
    k = (np.arange(len(seg)) - first).astype(np.float64)
    n = pieces[seg].astype(np.float64)
    starts = a[seg] + d[seg] * (k / n)[:, None]
    ends = a[seg] + d[seg] * ((k + 1.0) / n)[:, None]
    last = (k + 1.0) == n
    ends[last] = b[seg[last]]
    return starts, ends


def _axis_clip(
    p0: np.ndarray, dp: np.ndarray, lo: np.ndarray, hi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Parameter interval where p0 + t*dp lies in [lo, hi] (Liang-Barsky)."""
    flat = dp == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ta = (lo - p0) / dp
        tb = (hi - p0) / dp
    enter = np.where(flat, np.where((lo <= p0) & (p0 <= hi), -np.inf, np.inf), np.minimum(ta, tb))
    leave = np.where(flat, np.where((lo <= p0) & (p0 <= hi), np.inf, -np.inf), np.maximum(ta, tb))
    return enter, leave


def rasterize_path(path: LoopPath, grid: GridSpec) -> CellMask:
    """Supercover: block every cell whose closed square meets a path segment."""
    nx, ny = grid.nx, grid.ny
    uv = grid.to_grid_units(path.points)
    eps = TOUCH_TOLERANCE
    if (
        uv[:, 0].min() - eps <= 1.0
        or uv[:, 1].min() - eps <= 1.0
        or uv[:, 0].max() + eps >= nx - 1.0
        or uv[:, 1].max() + eps >= ny - 1.0
    ):
        raise GeometryError(
            f"path leaves the interior of the {nx}x{ny} grid (margin {grid.margin_cells(path):.3f} cells)"
        )

    starts, ends = _split_segments(uv)
    bits = np.zeros(grid.shape, dtype=bool)
    for k in range(0, len(starts), _CHUNK):
        ci, cj = _touched_cells(starts[k : k + _CHUNK], ends[k : k + _CHUNK])
        bits[cj, ci] = True
    return CellMask(bits, MaskRole.BLOCKED)


def _touched_cells(starts: np.ndarray, ends: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    eps = TOUCH_TOLERANCE
    lo = np.minimum(starts, ends)
    hi = np.maximum(starts, ends)
    i0 = np.ceil(lo[:, 0] - eps).astype(np.int64) - 1
    j0 = np.ceil(lo[:, 1] - eps).astype(np.int64) - 1
    i1 = np.floor(hi[:, 0] + eps).astype(np.int64)
    j1 = np.floor(hi[:, 1] + eps).astype(np.int64)

    ci = i0[:, None] + _DI[None, :]
    cj = j0[:, None] + _DJ[None, :]
    in_range = (ci <= i1[:, None]) & (cj <= j1[:, None])

    d = ends - starts
    ex, lx = _axis_clip(starts[:, 0:1], d[:, 0:1], ci - eps, ci + 1.0 + eps)
    ey, ly = _axis_clip(starts[:, 1:2], d[:, 1:2], cj - eps, cj + 1.0 + eps)
    t_enter = np.maximum(np.maximum(ex, ey), 0.0)
    t_leave = np.minimum(np.minimum(lx, ly), 1.0)
    hit = in_range & (t_enter <= t_leave)
    return ci[hit], cj[hit]


def flood_fill_outside(blocked: CellMask, grid: GridSpec) -> CellMask:
    """4-connected flood from the boundary ring through unblocked cells."""
    free = ~blocked.bits
    seeds = boundary_ring(grid.shape) & free
    # the default structuring element is the 4-connected cross
    outside = ndimage.binary_propagation(seeds, mask=free)
    return CellMask(outside, MaskRole.OUTSIDE)


def hull_mask(outside: CellMask) -> CellMask:
    """The filled hull: everything not reachable from infinity, path included."""
    return CellMask(~outside.bits, MaskRole.HULL)
