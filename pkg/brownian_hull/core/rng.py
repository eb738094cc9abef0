"""Counter-based seeding.

Every random stream in the lab is addressed by a (key, counter) pair hashed
with the splitmix64 finalizer, so a sample's randomness never depends on which
worker draws it or in what order:

    mix64(z):  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
               z ^= z >> 27; z *= 0x94D049BB133111EB
               z ^= z >> 31
    derive_seed(master, k) = mix64(master + (k + 1) * 0x9E3779B97F4A7C15)

All arithmetic is modulo 2**64.
"""

from __future__ import annotations

import numpy as np

from brownian_hull.core.types import Seed

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB
_TWO_PI = 2.0 * np.pi
_INV_2_53 = 2.0**-53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, k: int) -> Seed:
    """Seed of the k-th sample of an experiment."""
    return Seed(mix64(master_seed + (k + 1) * GOLDEN_GAMMA))


def derive_seeds(master_seed: int, count: int, start: int = 0) -> list[Seed]:
    return [derive_seed(master_seed, k) for k in range(start, start + count)]


def generator(seed: int) -> np.random.Generator:
    """Philox generator keyed by a derived seed."""
    return np.random.Generator(np.random.Philox(key=seed & MASK64))


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64).copy()
    with np.errstate(over="ignore"):
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MIX_1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MIX_2)
        z ^= z >> np.uint64(31)
    return z


def hash_pairs(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Vectorized derive_seed(key, counter)."""
    keys = np.asarray(keys, dtype=np.uint64)
    counters = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = keys + (counters + np.uint64(1)) * np.uint64(GOLDEN_GAMMA)
    return mix64_array(state)


def counter_uniforms(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Uniforms in (0, 1] addressed by (key, counter)."""
    bits = hash_pairs(keys, counters) >> np.uint64(11)
    return (bits.astype(np.float64) + 1.0) * _INV_2_53


def counter_normals(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Standard normals addressed by (key, counter), one Box-Muller pair each."""
    counters = np.asarray(counters, dtype=np.uint64)
    doubled = counters * np.uint64(2)
    u1 = counter_uniforms(keys, doubled)
    u2 = counter_uniforms(keys, doubled + np.uint64(1))
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(_TWO_PI * u2)
