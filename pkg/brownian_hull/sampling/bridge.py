"""Brownian bridge and lattice loop samplers."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from brownian_hull.core.rng import generator
from brownian_hull.core.types import LoopKind
from brownian_hull.errors import ConfigurationError
from brownian_hull.sampling.paths import BridgeSpec, LoopPath

# +x, -x, +y, -y
_UNIT_STEPS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])


def sample_gaussian_bridge(spec: BridgeSpec) -> LoopPath:
    """Exact bridge law at grid times: points[k] = W_k - (k/N) W_N."""
    if spec.kind is not LoopKind.GAUSSIAN_BRIDGE:
        raise ConfigurationError(f"expected a gaussian_bridge spec, got {spec.kind.value}")
    n = spec.steps
    rng = generator(spec.seed)
    walk = np.zeros((n + 1, 2))
    np.cumsum(rng.standard_normal((n, 2)) * math.sqrt(1.0 / n), axis=0, out=walk[1:])
    fractions = np.arange(n + 1, dtype=np.float64)[:, None] / n
    points = walk - fractions * walk[n]
    return LoopPath(points, LoopKind.GAUSSIAN_BRIDGE)


def horizontal_step_weights(steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Even horizontal step counts h and their probabilities among return loops.

    Weight of h is C(N, h) * C(h, h/2) * C(N-h, (N-h)/2).
    """
    h = np.arange(0, steps + 1, 2, dtype=np.float64)
    v = steps - h
    # the h! and v! factors cancel: N! / ((h/2)!^2 (v/2)!^2)
    log_w = gammaln(steps + 1.0) - 2.0 * gammaln(h / 2.0 + 1.0) - 2.0 * gammaln(v / 2.0 + 1.0)
    w = np.exp(log_w - log_w.max())
    return h.astype(np.int64), w / w.sum()


def sample_lattice_loop(spec: BridgeSpec) -> LoopPath:
    """Uniform closed simple random walk loop of N steps from the origin."""
    if spec.kind is not LoopKind.LATTICE_LOOP:
        raise ConfigurationError(f"expected a lattice_loop spec, got {spec.kind.value}")
    n = spec.steps
    rng = generator(spec.seed)
    counts, probs = horizontal_step_weights(n)
    h = int(rng.choice(counts, p=probs))
    v = n - h
    labels = np.repeat(np.arange(4), [h // 2, h // 2, v // 2, v // 2])
    labels = rng.permutation(labels)
    points = np.zeros((n + 1, 2))
    np.cumsum(_UNIT_STEPS[labels], axis=0, out=points[1:])
    return LoopPath(points, LoopKind.LATTICE_LOOP)


def rescale_lattice(path: LoopPath) -> LoopPath:
    """Diffusive rescaling by 1/sqrt(N) so the limit is the time-1 Brownian loop."""
    factor = 1.0 / math.sqrt(path.steps)
    return LoopPath(path.points * factor, path.kind)


def sample_loop(spec: BridgeSpec, *, rescale: bool = True) -> LoopPath:
    """Dispatch on the loop kind; lattice loops are rescaled unless asked otherwise."""
    if spec.kind is LoopKind.GAUSSIAN_BRIDGE:
        return sample_gaussian_bridge(spec)
    loop = sample_lattice_loop(spec)
    return rescale_lattice(loop) if rescale else loop
