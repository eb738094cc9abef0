"""Index-region areas with the band around the path resolved by bridge refinement.

The scanline field gives the polygon's winding at every cell center. Away
from the polygon that is also the Brownian loop's winding, but within REACH
step lengths of the path the unseen bridge between two vertices can still
wind around a center. Those band centers are drawn at random (all of them
when the band is small) and resolved with bridge_turns; the far cells are
counted exactly.

A zero-index center belongs to the hull when its cell is enclosed, or is a
path cell that does not border the outside flood fill.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from brownian_hull.geometry.regions import analyze_path
from brownian_hull.geometry.winding import center_windings
from brownian_hull.sampling.refine import REACH, bridge_turns, refinable, step_variance

if TYPE_CHECKING:
    from brownian_hull.geometry.grid import GridSpec
    from brownian_hull.geometry.regions import PathAnalysis, RegionAreas
    from brownian_hull.sampling.paths import LoopPath

BAND_POINTS = 512

_FOUR_NEIGHBOURS = ndimage.generate_binary_structure(2, 1)
_EIGHT_NEIGHBOURS = ndimage.generate_binary_structure(2, 2)


@dataclass(frozen=True)
class BandEstimate:
    """Winding-region areas of one loop, band included.

    `band_counts` tallies the resolved band centers by winding number; the
    entry for 0 only counts centers that belong to the hull. Each resolved
    center stands for band_cells / band_points cells.
    """

    cell_area: float
    band_cells: int
    band_points: int
    far_zero_inside_cells: int
    far_index_cells: dict[int, int] = field(default_factory=dict)
    band_counts: dict[int, int] = field(default_factory=dict)
    corrected: int = 0
    raster: RegionAreas | None = None

    @property
    def band_area(self) -> float:
        return self.band_cells * self.cell_area

    def _band_cells_for(self, count: int) -> float:
        if not self.band_points:
            return 0.0
        return count * self.band_cells / self.band_points

    def index_area(self, n: int) -> float:
        far = self.far_zero_inside_cells if n == 0 else self.far_index_cells.get(n, 0)
        return (far + self._band_cells_for(self.band_counts.get(n, 0))) * self.cell_area

    def indices(self) -> list[int]:
        return sorted(set(self.far_index_cells) | set(self.band_counts) | {0})

    @property
    def hull_area(self) -> float:
        """Zero-inside area plus every nonzero index area."""
        far = self.far_zero_inside_cells + sum(self.far_index_cells.values())
        band = self._band_cells_for(sum(self.band_counts.values()))
        return (far + band) * self.cell_area

    def tail_area(self, index_max: int) -> float:
        """Area of the regions with |n| > index_max."""
        return math.fsum(self.index_area(n) for n in self.indices() if abs(n) > index_max)

    def to_dict(self) -> dict[str, object]:
        return {
            "hull_area": self.hull_area,
            "band_area": self.band_area,
            "band_points": self.band_points,
            "corrected": self.corrected,
            "per_index": {str(n): self.index_area(n) for n in self.indices()},
        }


def band_mask(path: LoopPath, grid: GridSpec, blocked: np.ndarray, *, reach: float = REACH) -> np.ndarray:
    """Path cells grown by every cell whose center may lie within reach step lengths."""
    if not refinable(path):
        return blocked.copy()
    radius = reach * math.sqrt(step_variance(path))
    iterations = math.ceil(radius / grid.cell_size) + 1
    return ndimage.binary_dilation(blocked, structure=_EIGHT_NEIGHBOURS, iterations=iterations)


def _tally(values: np.ndarray) -> dict[int, int]:
    labels, counts = np.unique(values, return_counts=True)
    return {int(n): int(c) for n, c in zip(labels, counts, strict=True)}


def band_region_areas(
    path: LoopPath,
    grid: GridSpec,
    rng: np.random.Generator,
    *,
    points: int = BAND_POINTS,
    reach: float = REACH,
    analysis: PathAnalysis | None = None,
) -> BandEstimate:
    """Index areas of the loop with the path band resolved at up to `points` centers."""
    if analysis is None:
        analysis = analyze_path(path, grid)
    raw = center_windings(path, grid)
    blocked = analysis.blocked.bits
    outside = analysis.outside.bits
    rim = blocked & ndimage.binary_dilation(outside, structure=_FOUR_NEIGHBOURS)
    zero_inside = analysis.hull.bits & ~rim

    band = band_mask(path, grid, blocked, reach=reach)
    far = ~band
    far_values = raw[far]
    far_index = _tally(far_values[far_values != 0])
    far_zero_inside = int(np.count_nonzero(zero_inside[far] & (far_values == 0)))

    cells = np.flatnonzero(band)
    if len(cells) > points:
        cells = cells[rng.integers(0, len(cells), size=points)]
    j, i = np.divmod(cells, grid.nx)
    centers = np.column_stack((grid.centers_x()[i], grid.centers_y()[j]))
    coarse = raw.ravel()[cells].astype(np.int64)
    windings = coarse.copy()

    if refinable(path) and len(cells):
        tau = step_variance(path)
        starts, ends = path.points[:-1], path.points[1:]
        half = 0.5 * float(np.hypot(*(ends - starts).T).max())
        tree = cKDTree(0.5 * (starts + ends))
        candidates = tree.query_ball_point(centers, r=reach * math.sqrt(tau) + half, return_sorted=True)
        for q, idx in enumerate(candidates):
            if idx:
                sel = np.asarray(idx, dtype=np.int64)
                windings[q] += bridge_turns(starts[sel], ends[sel], tau, centers[q], rng, reach=reach)

    inside = zero_inside.ravel()[cells]
    counts = _tally(windings[windings != 0])
    zeros = int(np.count_nonzero((windings == 0) & inside))
    if zeros:
        counts[0] = zeros
    return BandEstimate(
        cell_area=grid.cell_area,
        band_cells=int(np.count_nonzero(band)),
        band_points=len(cells),
        far_zero_inside_cells=far_zero_inside,
        far_index_cells=far_index,
        band_counts=counts,
        corrected=int(np.count_nonzero(windings != coarse)),
        raster=analysis.areas,
    )
