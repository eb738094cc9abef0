"""Tests for hull and winding figures."""

from pathlib import Path

import numpy as np
import pytest

from brownian_hull.errors import ConfigurationError
from brownian_hull.geometry import GridSpec, analyze_path, grid_for_path
from brownian_hull.render import (
    Palette,
    RenderSpec,
    encode_ppm,
    hull_cells,
    render_hull,
    render_winding,
    winding_cells,
)
from brownian_hull.sampling import LoopPath


class TestRenderSpec:
    def test_rejects_tiny_figures(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError):
            RenderSpec(tmp_path / "a.svg", width_px=8)

    def test_zero_inside_color_must_stand_out(self, tmp_path: Path) -> None:
        palette = Palette(zero_inside=Palette().path)
        with pytest.raises(ConfigurationError):
            RenderSpec(tmp_path / "a.svg", palette=palette)

    def test_pixmap_by_suffix(self, tmp_path: Path) -> None:
        assert RenderSpec(tmp_path / "a.PPM").is_pixmap
        assert not RenderSpec(tmp_path / "a.svg").is_pixmap


class TestPalette:
    def test_index_colors(self) -> None:
        p = Palette()
        assert p.index_color(0) == p.zero_inside
        assert p.index_color(1) == p.positive[0]
        assert p.index_color(-2) == p.negative[1]
        assert p.index_color(5) == p.positive[0]


class TestCellCodes:
    def test_square_winding_codes(self, unit_square: LoopPath, square_grid: GridSpec) -> None:
        analysis = analyze_path(unit_square, square_grid)
        cells = winding_cells(analysis.winding, analysis.hull, Palette())
        assert cells.codes.shape == (23, 23)
        assert int(np.count_nonzero(cells.codes == 1)) == 0
        assert int(np.count_nonzero(cells.codes == 2)) == 128
        assert int(np.count_nonzero(cells.codes == 3)) == 196
        assert cells.labels == ["", "index 0 (inside)", "path cells", "index +1"]

    def test_hull_codes(self, unit_square: LoopPath, square_grid: GridSpec) -> None:
        analysis = analyze_path(unit_square, square_grid)
        cells = hull_cells(analysis.hull, analysis.blocked, square_grid, Palette())
        assert int(np.count_nonzero(cells.codes)) == 324
        assert int(np.count_nonzero(cells.codes == 2)) == 128


class TestRender:
    def test_hull_svg(self, unit_square: LoopPath, square_grid: GridSpec, tmp_path: Path) -> None:
        analysis = analyze_path(unit_square, square_grid)
        out = render_hull(
            unit_square,
            square_grid,
            RenderSpec(tmp_path / "figs" / "hull.svg"),
            hull=analysis.hull,
            blocked=analysis.blocked,
        )
        assert out == tmp_path / "figs" / "hull.svg"
        text = out.read_text()
        assert text.lstrip().startswith("<?xml") or text.lstrip().startswith("<svg")
        assert Palette().hull in text

    def test_empty_canvas(self, square_grid: GridSpec, tmp_path: Path) -> None:
        out = render_hull(None, square_grid, RenderSpec(tmp_path / "empty.svg", legend=False))
        assert "<svg" in out.read_text()

    def test_winding_svg(self, double_circle: LoopPath, tmp_path: Path) -> None:
        grid = grid_for_path(double_circle, 32.0)
        analysis = analyze_path(double_circle, grid)
        out = render_winding(
            analysis.winding, grid, RenderSpec(tmp_path / "w.svg"), hull=analysis.hull, path=double_circle
        )
        text = out.read_text()
        assert "index +2" in text

    def test_pixmap_output(self, unit_square: LoopPath, square_grid: GridSpec, tmp_path: Path) -> None:
        analysis = analyze_path(unit_square, square_grid)
        out = render_winding(analysis.winding, square_grid, RenderSpec(tmp_path / "w.ppm"), hull=analysis.hull)
        data = out.read_bytes()
        assert data.startswith(b"P6\n23 23\n255\n")
        assert len(data) == len(b"P6\n23 23\n255\n") + 23 * 23 * 3

    def test_large_grids_fall_back_to_pixmap(
        self, unit_square: LoopPath, square_grid: GridSpec, tmp_path: Path
    ) -> None:
        spec = RenderSpec(tmp_path / "big.svg", max_svg_cells=100)
        out = render_hull(unit_square, square_grid, spec)
        assert out == tmp_path / "big.ppm"
        assert out.read_bytes().startswith(b"P6")


class TestEncodePpm:
    def test_header_and_body(self) -> None:
        image = np.zeros((2, 3, 3), dtype=np.uint8)
        image[0, 0] = (255, 0, 0)
        data = encode_ppm(image)
        assert data[:11] == b"P6\n3 2\n255\n"
        assert data[11:14] == b"\xff\x00\x00"

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(ConfigurationError):
            encode_ppm(np.zeros((2, 3), dtype=np.uint8))
