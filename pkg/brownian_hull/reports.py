"""Report models shared by the Monte Carlo experiments and the CLI."""

from __future__ import annotations

import hashlib
import json
import math
import random
from typing import Any

import coolname.impl
import numpy as np
from pydantic import BaseModel, Field

from brownian_hull import __version__


def generate_run_id(master_seed: int) -> str:
    """Three-word slug, a pure function of the master seed."""
    coolname.impl.replace_random(random.Random(master_seed))
    return "-".join(coolname.impl.generate(3))


def config_hash(config: dict[str, Any]) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()


def provenance(master_seed: int) -> str:
    return f"brownian-hull {__version__} seed={master_seed}"


class SampleSummary(BaseModel):
    """Compensated mean and standard error of a list of per-sample values."""

    mean: float
    stderr: float
    samples: int

    @classmethod
    def of(cls, values: np.ndarray | list[float]) -> SampleSummary:
        data = np.asarray(values, dtype=np.float64)
        m = int(data.size)
        if m == 0:
            return cls(mean=math.nan, stderr=math.nan, samples=0)
        mean = math.fsum(data.tolist()) / m
        if m == 1:
            return cls(mean=mean, stderr=0.0, samples=1)
        var = math.fsum(((data - mean) ** 2).tolist()) / (m - 1)
        return cls(mean=mean, stderr=math.sqrt(var / m), samples=m)

    @classmethod
    def of_proportion(cls, hits: int, trials: int) -> SampleSummary:
        if trials == 0:
            return cls(mean=math.nan, stderr=math.nan, samples=0)
        p = hits / trials
        return cls(mean=p, stderr=math.sqrt(p * (1.0 - p) / trials), samples=trials)


class EstimateReport(BaseModel):
    quantity: str
    mean: float
    stderr: float
    samples: int
    target: float | None = None
    config: dict[str, Any] = Field(default_factory=dict)
    config_hash: str = ""
    provenance: str = ""
    run_id: str = ""
    failures: int = 0
    excluded: int = 0
    warnings: list[str] = Field(default_factory=list)

    @classmethod
    def build(
        cls,
        quantity: str,
        summary: SampleSummary,
        *,
        target: float | None,
        config: dict[str, Any],
        master_seed: int,
        **extra: Any,
    ) -> EstimateReport:
        return cls(
            quantity=quantity,
            mean=summary.mean,
            stderr=summary.stderr,
            samples=summary.samples,
            target=target,
            config=config,
            config_hash=config_hash(config),
            provenance=provenance(master_seed),
            run_id=generate_run_id(master_seed),
            **extra,
        )

    @property
    def deviation(self) -> float:
        """|mean - target|, NaN without a target."""
        if self.target is None:
            return math.nan
        return abs(self.mean - self.target)

    def within(self, sigmas: float = 3.0, margin: float = 0.0) -> bool:
        """True when the target lies within sigmas * stderr, or within the absolute margin."""
        if self.target is None:
            return True
        return self.deviation <= max(sigmas * self.stderr, margin)


class ConvergenceRow(BaseModel):
    steps: int
    cell_size: float
    samples: int
    mean: float
    stderr: float
    blocked_area: float
    relative_bias: float = 0.0


class ConvergenceReport(BaseModel):
    quantity: str
    target: float | None
    rows: list[ConvergenceRow]
    monotone: bool
    summary: str
    config_hash: str = ""
    provenance: str = ""
    run_id: str = ""
