"""Experiment configuration and the lab.toml loader."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from brownian_hull.analytic.quadrature import QuadratureConfig
from brownian_hull.core.types import LoopKind
from brownian_hull.errors import ConfigurationError
from brownian_hull.geometry.band import BAND_POINTS
from brownian_hull.geometry.grid import DEFAULT_MARGIN_CELLS
from brownian_hull.sle.loewner import DEFAULT_DT_BASE, DEFAULT_THETA_EXIT

THREADS_ENV = "BROWNIAN_HULL_THREADS"
DEFAULT_INDEX_MAX = 3


def default_threads() -> int:
    """Worker count from BROWNIAN_HULL_THREADS, else 1."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads == 0 or threads < -1:
        raise ConfigurationError(f"{THREADS_ENV} must be positive or -1, got {threads}")
    return threads


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo experiment over sampled loops."""

    samples: int = 1000
    steps: int = 2**16
    cells_per_unit: float = 256.0
    margin_cells: int = DEFAULT_MARGIN_CELLS
    index_max: int = DEFAULT_INDEX_MAX
    master_seed: int = 0
    kind: LoopKind = LoopKind.GAUSSIAN_BRIDGE
    band_points: int = BAND_POINTS
    threads: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ConfigurationError(f"samples must be >= 1, got {self.samples}")
        if self.index_max < 1:
            raise ConfigurationError(f"index_max must be >= 1, got {self.index_max}")
        if self.steps < 2:
            raise ConfigurationError(f"steps must be >= 2, got {self.steps}")
        if self.kind is LoopKind.LATTICE_LOOP and self.steps % 2:
            raise ConfigurationError(f"lattice loops need an even step count, got {self.steps}")
        if not self.cells_per_unit > 0:
            raise ConfigurationError(f"cells_per_unit must be positive, got {self.cells_per_unit}")
        if self.margin_cells < 2:
            raise ConfigurationError(f"margin_cells must be >= 2, got {self.margin_cells}")
        if self.band_points < 1:
            raise ConfigurationError(f"band_points must be >= 1, got {self.band_points}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigurationError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")

    @property
    def cell_size(self) -> float:
        return 1.0 / self.cells_per_unit

    def to_dict(self) -> dict[str, Any]:
        """Everything that determines the output; `threads` is excluded."""
        data = asdict(self)
        data["kind"] = self.kind.value
        del data["threads"]
        return data


@dataclass(frozen=True)
class SleSettings:
    kappa: float = 8.0 / 3.0
    samples: int = 20_000
    dt_base: float = DEFAULT_DT_BASE
    theta_exit: float = DEFAULT_THETA_EXIT
    t_max: float | None = None
    max_step: float | None = None


@dataclass(frozen=True)
class AcceptanceThresholds:
    """Tolerances for the Monte Carlo acceptance checks.

    Relative margins cover discretization bias, which `convergence_study`
    reports per rung for any tracked quantity. A check passes when the
    deviation is within max(sigmas * stderr, margin * target).
    """

    sigmas: float = 3.0
    hull_area_margin: float = 0.07
    index_one_margin: float = 0.10
    index_zero_margin: float = 0.15
    index_higher_margin: float = 0.25
    max_failure_fraction: float = 0.001
    max_undecided_fraction: float = 0.01


@dataclass(frozen=True)
class OutputSettings:
    dir: Path = Path("lab_output")
    database: str = "reports.db"
    per_sample_csv: bool = False

    @property
    def database_path(self) -> Path:
        return self.dir / self.database


@dataclass(frozen=True)
class LabConfig:
    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    sle: SleSettings = field(default_factory=SleSettings)
    thresholds: AcceptanceThresholds = field(default_factory=AcceptanceThresholds)
    output: OutputSettings = field(default_factory=OutputSettings)

    @classmethod
    def from_toml(cls, path: Path) -> LabConfig:
        import tomllib

        with path.open("rb") as f:
            data = tomllib.load(f)

        execution = dict(data.get("execution", {}))
        grid = data.get("grid", {})
        if "kind" in execution:
            execution["kind"] = LoopKind.parse(execution["kind"])
        execution.setdefault("threads", default_threads())
        experiment_kwargs = {**execution, **grid}

        output = dict(data.get("output", {}))
        if "dir" in output:
            output["dir"] = Path(output["dir"])

        try:
            return cls(
                experiment=ExperimentConfig(**experiment_kwargs),
                quadrature=QuadratureConfig(**data.get("quadrature", {})),
                sle=SleSettings(**data.get("sle", {})),
                thresholds=AcceptanceThresholds(**data.get("thresholds", {})),
                output=OutputSettings(**output),
            )
        except TypeError as e:
            raise ConfigurationError(f"{path}: {e}") from None
