"""SVG figures of a loop's hull and of its winding-index regions.

Cells are coded into small integers first and each grid row is drawn as
runs of equal code, so a figure holds a few rectangles per row instead of
one per cell. Grids larger than RenderSpec.max_svg_cells go to a pixmap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import drawsvg as draw
import numpy as np

from brownian_hull.errors import ConfigurationError
from brownian_hull.render.pixmap import write_ppm

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

    from brownian_hull.geometry import CellMask, GridSpec, WindingField
    from brownian_hull.sampling import LoopPath

logger = logging.getLogger(__name__)

DEFAULT_MAX_SVG_CELLS = 4_000_000


@dataclass(frozen=True)
class Palette:
    background: str = "#ffffff"
    hull: str = "#c6dbef"
    path: str = "#08306b"
    blocked: str = "#737373"
    # index 0 inside the hull
    zero_inside: str = "#000000"
    axes: str = "#bdbdbd"
    positive: tuple[str, ...] = ("#fdae61", "#f46d43", "#d73027", "#a50026")
    negative: tuple[str, ...] = ("#abd9e9", "#74add1", "#4575b4", "#313695")

    def index_color(self, n: int) -> str:
        if n == 0:
            return self.zero_inside
        colors = self.positive if n > 0 else self.negative
        return colors[(abs(n) - 1) % len(colors)]


@dataclass(frozen=True)
class RenderSpec:
    out: Path
    width_px: int = 800
    height_px: int | None = None
    palette: Palette = field(default_factory=Palette)
    legend: bool = True
    max_svg_cells: int = DEFAULT_MAX_SVG_CELLS

    def __post_init__(self) -> None:
        if self.width_px < 16 or (self.height_px is not None and self.height_px < 16):
            raise ConfigurationError("figures must be at least 16 px on each side")
        p = self.palette
        reserved = {p.path, p.blocked}
        if p.zero_inside in reserved or p.zero_inside == p.background:
            raise ConfigurationError("index-0-inside color must differ from path, blocked and background")

    @property
    def is_pixmap(self) -> bool:
        return self.out.suffix.lower() == ".ppm"


@dataclass(frozen=True)
class CodedCells:
    """codes[j, i] indexes into colors; code 0 is the background."""

    codes: np.ndarray
    colors: list[str]
    labels: list[str]


def _rgb(color: str) -> tuple[int, int, int]:
    h = color.lstrip("#")
    return int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16)


def _to_rgb_image(cells: CodedCells) -> np.ndarray:
    lut = np.array([_rgb(c) for c in cells.colors], dtype=np.uint8)
    return lut[cells.codes[::-1]]


def _row_runs(codes: np.ndarray) -> Iterator[tuple[int, int, int, int]]:
    """(j, i_start, length, code) for each run of equal nonzero code in each row."""
    ny, nx = codes.shape
    for j in range(ny):
        row = codes[j]
        edges = np.flatnonzero(np.diff(row)) + 1
        starts = np.concatenate(([0], edges))
        ends = np.concatenate((edges, [nx]))
        for s, e in zip(starts.tolist(), ends.tolist(), strict=True):
            code = int(row[s])
            if code:
                yield j, s, e - s, code


def _legend_width(spec: RenderSpec, grid: GridSpec) -> float:
    return 0.3 * grid.ny if spec.legend else 0.0


def _drawing(spec: RenderSpec, grid: GridSpec) -> draw.Drawing:
    width = grid.nx + _legend_width(spec, grid)
    d = draw.Drawing(width, grid.ny)
    height_px = spec.height_px or max(16, round(spec.width_px * grid.ny / width))
    d.set_render_size(spec.width_px, height_px)
    d.append(draw.Rectangle(0, 0, width, grid.ny, fill=spec.palette.background))
    return d


def _draw_cells(d: draw.Drawing, cells: CodedCells, grid: GridSpec) -> None:
    for j, i, length, code in _row_runs(cells.codes):
        d.append(
            draw.Rectangle(i, grid.ny - j - 1, length, 1, fill=cells.colors[code], stroke="none")
        )


def _draw_axes(d: draw.Drawing, grid: GridSpec, palette: Palette) -> None:
    d.append(
        draw.Rectangle(0, 0, grid.nx, grid.ny, fill="none", stroke=palette.axes, stroke_width=0.5)
    )
    xmin, ymin, xmax, ymax = grid.extent
    u0, v0 = grid.to_grid_units(np.array([0.0, 0.0]))
    if xmin <= 0.0 <= xmax:
        d.append(draw.Line(u0, 0, u0, grid.ny, stroke=palette.axes, stroke_width=0.5))
    if ymin <= 0.0 <= ymax:
        d.append(draw.Line(0, grid.ny - v0, grid.nx, grid.ny - v0, stroke=palette.axes, stroke_width=0.5))


def _draw_path(d: draw.Drawing, path: LoopPath, grid: GridSpec, palette: Palette) -> None:
    uv = grid.to_grid_units(path.points)
    coords = np.column_stack((uv[:, 0], grid.ny - uv[:, 1])).ravel().tolist()
    d.append(
        draw.Lines(*coords, close=False, fill="none", stroke=palette.path, stroke_width=0.6)
    )


def _draw_legend(d: draw.Drawing, cells: CodedCells, grid: GridSpec, spec: RenderSpec) -> None:
    if not spec.legend:
        return
    size = max(grid.ny / 30.0, 1.0)
    x = grid.nx + size
    for row, (color, label) in enumerate(zip(cells.colors[1:], cells.labels[1:], strict=True)):
        y = size * (1 + 1.6 * row)
        d.append(draw.Rectangle(x, y, size, size, fill=color, stroke=spec.palette.axes, stroke_width=0.2))
        d.append(draw.Text(label, size, x + 1.5 * size, y + 0.85 * size, fill="#000000"))


def _emit(
    cells: CodedCells, grid: GridSpec, spec: RenderSpec, path: LoopPath | None
) -> Path:
    if spec.is_pixmap or cells.codes.size > spec.max_svg_cells:
        out = spec.out if spec.is_pixmap else spec.out.with_suffix(".ppm")
        if not spec.is_pixmap:
            logger.warning("%d cells exceed the SVG limit; writing %s instead", cells.codes.size, out)
        write_ppm(_to_rgb_image(cells), out)
        return out

    d = _drawing(spec, grid)
    _draw_cells(d, cells, grid)
    _draw_axes(d, grid, spec.palette)
    if path is not None:
        _draw_path(d, path, grid, spec.palette)
    _draw_legend(d, cells, grid, spec)
    spec.out.parent.mkdir(parents=True, exist_ok=True)
    d.save_svg(str(spec.out))
    return spec.out


def hull_cells(
    hull: CellMask | None, blocked: CellMask | None, grid: GridSpec, palette: Palette
) -> CodedCells:
    codes = np.zeros(grid.shape, dtype=np.int16)
    if hull is not None:
        codes[hull.bits] = 1
    if blocked is not None:
        codes[blocked.bits] = 2
    return CodedCells(codes, [palette.background, palette.hull, palette.blocked], ["", "hull", "path cells"])


def winding_cells(winding: WindingField, hull: CellMask, palette: Palette) -> CodedCells:
    values = winding.values
    blocked = winding.blocked
    indices = [n for n in winding.indices() if n != 0]
    codes = np.zeros(values.shape, dtype=np.int16)
    colors = [palette.background, palette.zero_inside, palette.blocked]
    labels = ["", "index 0 (inside)", "path cells"]
    codes[(values == 0) & hull.bits & ~blocked] = 1
    codes[blocked] = 2
    for n in indices:
        codes[(values == n) & ~blocked] = len(colors)
        colors.append(palette.index_color(n))
        labels.append(f"index {n:+d}")
    return CodedCells(codes, colors, labels)


def render_hull(
    path: LoopPath | None,
    grid: GridSpec,
    spec: RenderSpec,
    *,
    hull: CellMask | None = None,
    blocked: CellMask | None = None,
) -> Path:
    """Hull fill with the path drawn over it; returns the file written.

    Without a path or masks the canvas holds only the frame and the axes.
    """
    cells = hull_cells(hull, blocked, grid, spec.palette)
    return _emit(cells, grid, spec, path)


def render_winding(
    winding: WindingField,
    grid: GridSpec,
    spec: RenderSpec,
    *,
    hull: CellMask,
    path: LoopPath | None = None,
) -> Path:
    """One color per winding index; index 0 inside the hull is drawn in the zero_inside color."""
    cells = winding_cells(winding, hull, spec.palette)
    return _emit(cells, grid, spec, path)
