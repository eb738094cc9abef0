"""Discretized loop paths and their export format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from brownian_hull.core.types import LoopKind
from brownian_hull.errors import ConfigurationError

if TYPE_CHECKING:
    from pathlib import Path

MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class BridgeSpec:
    """What to sample: N steps of a given kind, reproducible from one seed."""

    steps: int
    seed: int = 0
    kind: LoopKind = LoopKind.GAUSSIAN_BRIDGE

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ConfigurationError(f"steps must be >= 2, got {self.steps}")
        if self.kind is LoopKind.LATTICE_LOOP and self.steps % 2:
            raise ConfigurationError(f"lattice loops need an even step count, got {self.steps}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class LoopPath:
    """Closed polygonal path with N uniform time steps.

    `points` has shape (N+1, 2) and points[0] == points[N].
    """

    points: np.ndarray
    kind: LoopKind

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ConfigurationError(f"points must have shape (N+1, 2), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ConfigurationError("points must be finite")
        if not np.array_equal(pts[0], pts[-1]):
            raise ConfigurationError("path is not closed: points[0] != points[N]")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def steps(self) -> int:
        return self.points.shape[0] - 1

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.points, axis=0)

    @property
    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax)."""
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def length(self) -> float:
        return float(np.hypot(*self.increments.T).sum())

    def translated(self, dx: float, dy: float) -> LoopPath:
        return LoopPath(self.points + np.array([dx, dy]), self.kind)

    def same_as(self, other: LoopPath) -> bool:
        return self.kind is other.kind and np.array_equal(self.points, other.points)


def format_path(path: LoopPath) -> str:
    lines = [f"{path.steps} {path.kind.value}"]
    lines.extend(f"{x!r} {y!r}" for x, y in path.points.tolist())
    return "\n".join(lines) + "\n"


def parse_path(text: str) -> LoopPath:
    rows = text.strip().splitlines()
    if not rows:
        raise ConfigurationError("empty path file")
    header = rows[0].split()
    if len(header) != 2:
        raise ConfigurationError(f"bad path header: {rows[0]!r}")
    steps = int(header[0])
    kind = LoopKind.parse(header[1])
    if len(rows) != steps + 2:
        raise ConfigurationError(f"expected {steps + 1} points, found {len(rows) - 1}")
    points = np.array([[float(v) for v in row.split()] for row in rows[1:]], dtype=np.float64)
    return LoopPath(points, kind)


def write_path(path: LoopPath, out: Path) -> None:
    out.write_text(format_path(path), encoding="utf-8")


def read_path(src: Path) -> LoopPath:
    return parse_path(src.read_text(encoding="utf-8"))
