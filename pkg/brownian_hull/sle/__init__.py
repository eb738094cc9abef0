"""Loewner-evolution check of Schramm's side-of-curve formula."""

from brownian_hull.sle.loewner import (
    AngleSweep,
    LoewnerRun,
    MartingaleRow,
    SideBatch,
    SideResult,
    estimate_side_probability,
    evolve_point_side,
    evolve_point_sides,
    martingale_profile,
    sweep_angles,
)

__all__ = [
    "AngleSweep",
    "LoewnerRun",
    "MartingaleRow",
    "SideBatch",
    "SideResult",
    "estimate_side_probability",
    "evolve_point_side",
    "evolve_point_sides",
    "martingale_profile",
    "sweep_angles",
]
