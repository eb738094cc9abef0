"""Core types and counter-based seeding."""

from brownian_hull.core.rng import (
    counter_normals,
    counter_uniforms,
    derive_seed,
    derive_seeds,
    generator,
    mix64,
)
from brownian_hull.core.types import LoopKind, PlanarPoint, Seed, Side

__all__ = [
    "LoopKind",
    "PlanarPoint",
    "Seed",
    "Side",
    "counter_normals",
    "counter_uniforms",
    "derive_seed",
    "derive_seeds",
    "generator",
    "mix64",
]
