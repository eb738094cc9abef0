"""Figures of loops, hulls and winding-index maps."""

from brownian_hull.render.figures import (
    CodedCells,
    Palette,
    RenderSpec,
    hull_cells,
    render_hull,
    render_winding,
    winding_cells,
)
from brownian_hull.render.pixmap import encode_ppm, write_ppm

__all__ = [
    "CodedCells",
    "Palette",
    "RenderSpec",
    "encode_ppm",
    "hull_cells",
    "render_hull",
    "render_winding",
    "winding_cells",
    "write_ppm",
]
