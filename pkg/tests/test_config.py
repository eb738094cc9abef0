"""Tests for experiment configuration."""

from dataclasses import FrozenInstanceError
from pathlib import Path

import pytest

from brownian_hull.config import (
    THREADS_ENV,
    AcceptanceThresholds,
    ExperimentConfig,
    LabConfig,
    default_threads,
)
from brownian_hull.core import LoopKind
from brownian_hull.errors import ConfigurationError

LAB_TOML = Path(__file__).resolve().parent.parent / "lab.toml"


class TestExperimentConfig:
    def test_default_values(self) -> None:
        cfg = ExperimentConfig()
        assert cfg.samples == 1000
        assert cfg.steps == 65536
        assert cfg.cells_per_unit == 256.0
        assert cfg.margin_cells == 3
        assert cfg.index_max == 3
        assert cfg.kind is LoopKind.GAUSSIAN_BRIDGE
        assert cfg.cell_size == pytest.approx(1 / 256)

    def test_frozen(self) -> None:
        cfg = ExperimentConfig()
        with pytest.raises(FrozenInstanceError):
            cfg.samples = 5  # type: ignore[misc]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"samples": 0},
            {"steps": 1},
            {"index_max": 0},
            {"cells_per_unit": 0.0},
            {"margin_cells": 1},
            {"master_seed": -1},
            {"master_seed": 2**64},
            {"kind": LoopKind.LATTICE_LOOP, "steps": 101},
        ],
    )
    def test_invalid_values(self, kwargs: dict[str, object]) -> None:
        with pytest.raises(ConfigurationError):
            ExperimentConfig(**kwargs)  # type: ignore[arg-type]

    def test_to_dict_drops_threads(self) -> None:
        serial = ExperimentConfig(threads=1).to_dict()
        assert "threads" not in serial
        assert serial == ExperimentConfig(threads=8).to_dict()
        assert serial["kind"] == "gaussian_bridge"


class TestDefaultThreads:
    def test_unset(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert default_threads() == 1

    def test_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv(THREADS_ENV, "4")
        assert default_threads() == 4
        monkeypatch.setenv(THREADS_ENV, "-1")
        assert default_threads() == -1

    @pytest.mark.parametrize("raw", ["zero", "0", "-3"])
    def test_rejects_bad_values(self, monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
        monkeypatch.setenv(THREADS_ENV, raw)
        with pytest.raises(ConfigurationError):
            default_threads()


class TestLabConfig:
    def test_shipped_file_matches_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv(THREADS_ENV, raising=False)
        lab = LabConfig.from_toml(LAB_TOML)
        assert lab.experiment == ExperimentConfig()
        assert lab.thresholds == AcceptanceThresholds()
        assert lab.sle.kappa == pytest.approx(8 / 3)
        assert lab.output.database_path == Path("lab_output") / "reports.db"

    def test_overrides(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv(THREADS_ENV, "2")
        path = tmp_path / "lab.toml"
        path.write_text(
            '[execution]\nsamples = 10\nkind = "lattice"\nsteps = 64\n'
            "[grid]\nindex_max = 5\n"
            "[sle]\nmax_step = 0.001\n"
            '[output]\ndir = "elsewhere"\n'
        )
        lab = LabConfig.from_toml(path)
        assert lab.experiment.samples == 10
        assert lab.experiment.kind is LoopKind.LATTICE_LOOP
        assert lab.experiment.index_max == 5
        assert lab.experiment.threads == 2
        assert lab.sle.max_step == 0.001
        assert lab.output.dir == Path("elsewhere")

    def test_unknown_key(self, tmp_path: Path) -> None:
        path = tmp_path / "lab.toml"
        path.write_text("[execution]\nsample_count = 10\n")
        with pytest.raises(ConfigurationError, match="sample_count"):
            LabConfig.from_toml(path)

    def test_invalid_value(self, tmp_path: Path) -> None:
        path = tmp_path / "lab.toml"
        path.write_text("[grid]\nmargin_cells = 0\n")
        with pytest.raises(ConfigurationError):
            LabConfig.from_toml(path)

    def test_unknown_kind(self, tmp_path: Path) -> None:
        path = tmp_path / "lab.toml"
        path.write_text('[execution]\nkind = "levy"\n')
        with pytest.raises(ConfigurationError):
            LabConfig.from_toml(path)
