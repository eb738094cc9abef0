"""Core value types shared across the lab."""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple, NewType

from brownian_hull.errors import ConfigurationError

# 64-bit unsigned seed, either a master seed or one derived per sample
Seed = NewType("Seed", int)


class LoopKind(Enum):
    GAUSSIAN_BRIDGE = "gaussian_bridge"
    LATTICE_LOOP = "lattice_loop"

    @classmethod
    def parse(cls, text: str) -> LoopKind:
        aliases = {"gaussian": cls.GAUSSIAN_BRIDGE, "lattice": cls.LATTICE_LOOP}
        if text in aliases:
            return aliases[text]
        try:
            return cls(text)
        except ValueError:
            raise ConfigurationError(f"Unknown loop kind: {text!r}") from None


class Side(Enum):
    RIGHT = "right"
    LEFT = "left"
    UNDECIDED = "undecided"


class PlanarPoint(NamedTuple):
    """A point of the plane in dimensionless units."""

    x: float
    y: float

    @classmethod
    def checked(cls, x: float, y: float) -> PlanarPoint:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ConfigurationError(f"Point must be finite, got ({x}, {y})")
        return cls(float(x), float(y))

    @classmethod
    def polar(cls, r: float, theta: float) -> PlanarPoint:
        return cls(r * math.cos(theta), r * math.sin(theta))

    @property
    def modulus(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def argument(self) -> float:
        return math.atan2(self.y, self.x)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)
