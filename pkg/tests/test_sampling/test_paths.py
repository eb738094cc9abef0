"""Tests for LoopPath and its text format."""

from pathlib import Path

import numpy as np
import pytest

from brownian_hull.core import LoopKind
from brownian_hull.errors import ConfigurationError
from brownian_hull.sampling import (
    BridgeSpec,
    LoopPath,
    format_path,
    parse_path,
    read_path,
    sample_loop,
    write_path,
)


class TestLoopPath:
    def test_rejects_open_path(self) -> None:
        with pytest.raises(ConfigurationError):
            LoopPath(np.array([[0.0, 0.0], [1.0, 0.0]]), LoopKind.GAUSSIAN_BRIDGE)

    def test_rejects_non_finite_points(self) -> None:
        with pytest.raises(ConfigurationError):
            LoopPath(np.array([[0.0, 0.0], [np.nan, 0.0], [0.0, 0.0]]), LoopKind.GAUSSIAN_BRIDGE)

    def test_points_are_read_only(self, unit_square: LoopPath) -> None:
        with pytest.raises(ValueError):
            unit_square.points[0, 0] = 5.0

    def test_bounding_box_and_length(self, unit_square: LoopPath) -> None:
        assert unit_square.bounding_box == (0.0, 0.0, 1.0, 1.0)
        assert unit_square.length == 4.0
        assert unit_square.steps == 4


class TestPathFormat:
    def test_header_names_steps_and_kind(self, unit_square: LoopPath) -> None:
        assert format_path(unit_square).splitlines()[0] == "4 gaussian_bridge"

    def test_file_round_trip_is_exact(self, tmp_path: Path) -> None:
        path = sample_loop(BridgeSpec(300, seed=21))
        out = tmp_path / "loop.txt"
        write_path(path, out)
        assert read_path(out).same_as(path)

    def test_lattice_loop_reads_back_exactly(self) -> None:
        path = sample_loop(BridgeSpec(64, seed=5, kind=LoopKind.LATTICE_LOOP), rescale=False)
        restored = parse_path(format_path(path))
        assert restored.kind is LoopKind.LATTICE_LOOP
        assert restored.same_as(path)

    def test_point_count_must_match_header(self, unit_square: LoopPath) -> None:
        text = format_path(unit_square).replace("4 gaussian_bridge", "5 gaussian_bridge")
        with pytest.raises(ConfigurationError):
            parse_path(text)

    def test_empty_text_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            parse_path("  \n")
