"""Vervaat lowest-point shift."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from brownian_hull.sampling.paths import LoopPath

if TYPE_CHECKING:
    from collections.abc import Sequence

# mean height of the normalized Brownian excursion at t = 1/2
EXCURSION_MIDPOINT_MEAN = math.sqrt(2.0 / math.pi)


def lowest_index(path: LoopPath) -> int:
    """Smallest vertex index attaining the minimum y-coordinate."""
    return int(np.argmin(path.ys[:-1]))


def vervaat_transform(path: LoopPath) -> LoopPath:
    """Restart the loop at its lowest point: Z_k = points[(t+k) mod N] - points[t]."""
    n = path.steps
    t_bar = lowest_index(path)
    idx = (t_bar + np.arange(n + 1)) % n
    shifted = path.points[idx] - path.points[t_bar]
    return LoopPath(shifted, path.kind)


def midpoint_height(path: LoopPath) -> float:
    return float(path.ys[path.steps // 2] - path.ys[0])


class ExcursionProfile(NamedTuple):
    mean: float
    stderr: float
    samples: int
    target: float = EXCURSION_MIDPOINT_MEAN

    @classmethod
    def of_heights(cls, heights: Sequence[float] | np.ndarray) -> ExcursionProfile:
        h = np.asarray(heights, dtype=np.float64)
        m = h.size
        stderr = float(h.std(ddof=1) / math.sqrt(m)) if m > 1 else math.nan
        return cls(float(h.mean()) if m else math.nan, stderr, m)


def excursion_profile(paths: Sequence[LoopPath]) -> ExcursionProfile:
    """Mean height at t = 1/2 of already shifted paths, against the excursion mean.

    Diagnostic only: the discrete bridge converges to the excursion law, no
    acceptance is attached.
    """
    return ExcursionProfile.of_heights([midpoint_height(p) for p in paths])
