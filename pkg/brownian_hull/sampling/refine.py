"""Brownian-bridge refinement of a sampled loop around a point.

Between two consecutive vertices a Gaussian bridge sample is itself a
Brownian bridge. Splitting a segment of per-coordinate variance tau at a
midpoint drawn from N((a+b)/2, tau/4) gives the exact law of the path at the
finer time (Levy's construction), so the turns a loop makes around z can be
resolved to any depth without redrawing the coarse path. Only segments that
pass within REACH * sqrt(tau) of z are split; a bridge strays that far from
its chord with probability below 4 exp(-REACH**2).
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from brownian_hull.core.types import LoopKind

if TYPE_CHECKING:
    from brownian_hull.core.types import PlanarPoint
    from brownian_hull.sampling.paths import LoopPath

REACH = 5.0
MAX_DEPTH = 40
_TWO_PI = 2.0 * math.pi


def step_variance(path: LoopPath) -> float:
    """Per-coordinate variance of one step of the unit-time loop."""
    return 1.0 / path.steps


def refinable(path: LoopPath) -> bool:
    """Only Gaussian bridges have Brownian bridges between their vertices."""
    return path.kind is LoopKind.GAUSSIAN_BRIDGE


def segment_distances(starts: np.ndarray, ends: np.ndarray, z: np.ndarray) -> np.ndarray:
    seg = ends - starts
    rel = z - starts
    length2 = np.einsum("ij,ij->i", seg, seg)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(length2 > 0, np.einsum("ij,ij->i", rel, seg) / length2, 0.0)
    s = np.clip(s, 0.0, 1.0)
    return np.hypot(*(starts + s[:, None] * seg - z).T)


def turning(starts: np.ndarray, ends: np.ndarray, z: np.ndarray) -> float:
    """Total signed angle swept around z by the segments, in radians."""
    a = starts - z
    b = ends - z
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    return float(np.arctan2(cross, dot).sum())


def split_segments(
    starts: np.ndarray, ends: np.ndarray, tau: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """One subdivision level: each segment becomes two halves through a bridge midpoint."""
    mid = 0.5 * (starts + ends) + math.sqrt(tau / 4.0) * rng.standard_normal(starts.shape)
    return np.concatenate((starts, mid)), np.concatenate((mid, ends))


def bridge_turns(
    starts: np.ndarray,
    ends: np.ndarray,
    tau: float,
    z: np.ndarray,
    rng: np.random.Generator,
    *,
    reach: float = REACH,
    max_depth: int = MAX_DEPTH,
) -> int:
    """Extra turns around z when every chord is replaced by a Brownian bridge.

    Segments are split until each piece is farther than reach * sqrt(tau)
    from z; pieces still close after max_depth levels stay straight.
    """
    if not len(starts):
        return 0
    chords = turning(starts, ends, z)
    swept = 0.0
    a, b = starts, ends
    for _ in range(max_depth):
        close = segment_distances(a, b, z) < reach * math.sqrt(tau)
        swept += turning(a[~close], b[~close], z)
        a, b = a[close], b[close]
        if not len(a):
            break
        a, b = split_segments(a, b, tau, rng)
        tau /= 2.0
    swept += turning(a, b, z)
    return round((swept - chords) / _TWO_PI)


def refined_winding(
    path: LoopPath,
    z: PlanarPoint | tuple[float, float],
    rng: np.random.Generator,
    *,
    reach: float = REACH,
) -> int:
    """Winding around z of the Brownian loop through the path's vertices.

    Lattice loops have no bridge law between vertices and keep the polygon's
    winding.
    """
    p = np.asarray(z, dtype=np.float64)
    a, b = path.points[:-1], path.points[1:]
    coarse = round(turning(a, b, p) / _TWO_PI)
    if not refinable(path):
        return coarse
    tau = step_variance(path)
    close = segment_distances(a, b, p) < reach * math.sqrt(tau)
    return coarse + bridge_turns(a[close], b[close], tau, p, rng, reach=reach)
