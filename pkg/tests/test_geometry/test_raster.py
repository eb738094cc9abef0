"""Tests for grids, supercover rasterization and the outside flood fill."""

import numpy as np
import pytest

from brownian_hull.core import LoopKind, PlanarPoint
from brownian_hull.errors import ConfigurationError, GeometryError
from brownian_hull.geometry import (
    GridSpec,
    MaskRole,
    flood_fill_outside,
    grid_for_path,
    has_row_degeneracy,
    hull_mask,
    rasterize_path,
)
from brownian_hull.sampling import BridgeSpec, LoopPath, sample_loop


class TestGridForPath:
    def test_square_grid_dimensions(self, square_grid: GridSpec) -> None:
        assert square_grid.cell_size == 1 / 16
        assert square_grid.origin == PlanarPoint(-3 / 16, -3 / 16)
        assert (square_grid.nx, square_grid.ny) == (23, 23)

    def test_margin_is_at_least_the_requested_cells(self, bridge: LoopPath) -> None:
        grid = grid_for_path(bridge, 64.0)
        assert grid.margin_cells(bridge) >= 3.0

    def test_rejects_thin_margins(self, unit_square: LoopPath) -> None:
        with pytest.raises(ConfigurationError):
            grid_for_path(unit_square, 16.0, margin_cells=1)

    def test_lattice_vertices_are_moved_off_center_rows(self) -> None:
        path = sample_loop(BridgeSpec(64, seed=2, kind=LoopKind.LATTICE_LOOP), rescale=False)
        grid = grid_for_path(path, 2.0)
        assert not has_row_degeneracy(path, grid)

    def test_grid_depends_only_on_the_path(self, bridge: LoopPath) -> None:
        assert grid_for_path(bridge, 50.0) == grid_for_path(bridge, 50.0)


class TestRasterize:
    def test_square_blocks_two_cell_wide_frame(
        self, unit_square: LoopPath, square_grid: GridSpec
    ) -> None:
        blocked = rasterize_path(unit_square, square_grid)
        assert blocked.role is MaskRole.BLOCKED
        # edges run along cell boundaries u = 3 and u = 19, touching cells on both sides
        frame = np.zeros(square_grid.shape, dtype=bool)
        frame[2:20, 2:20] = True
        frame[4:18, 4:18] = False
        assert np.array_equal(blocked.bits, frame)
        assert blocked.count == 128

    def test_path_touching_the_grid_edge_is_rejected(self, unit_square: LoopPath) -> None:
        grid = GridSpec(PlanarPoint(0.0, 0.0), 0.25, 8, 8)
        with pytest.raises(GeometryError):
            rasterize_path(unit_square, grid)

    def test_every_vertex_cell_is_blocked(self, bridge: LoopPath) -> None:
        grid = grid_for_path(bridge, 40.0)
        blocked = rasterize_path(bridge, grid)
        uv = np.floor(grid.to_grid_units(bridge.points)).astype(int)
        assert blocked.bits[uv[:, 1], uv[:, 0]].all()


class TestFloodFill:
    def test_outside_and_hull_partition_the_grid(self, bridge: LoopPath) -> None:
        grid = grid_for_path(bridge, 40.0)
        blocked = rasterize_path(bridge, grid)
        outside = flood_fill_outside(blocked, grid)
        hull = hull_mask(outside)
        assert hull.role is MaskRole.HULL
        assert not (outside.bits & blocked.bits).any()
        assert (hull.bits | outside.bits).all()
        assert not (hull.bits & outside.bits).any()
        assert (hull.bits[blocked.bits]).all()

    def test_boundary_ring_is_outside(self, unit_square: LoopPath, square_grid: GridSpec) -> None:
        outside = flood_fill_outside(rasterize_path(unit_square, square_grid), square_grid)
        assert outside.bits[0, :].all()
        assert outside.bits[:, -1].all()

    def test_square_interior_is_not_reached(
        self, unit_square: LoopPath, square_grid: GridSpec
    ) -> None:
        outside = flood_fill_outside(rasterize_path(unit_square, square_grid), square_grid)
        assert not outside.bits[4:18, 4:18].any()
        assert square_grid.nx * square_grid.ny - outside.count == 18 * 18
