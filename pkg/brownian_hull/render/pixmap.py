"""Binary PPM output for grids too large for SVG."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from brownian_hull.errors import ConfigurationError

if TYPE_CHECKING:
    from pathlib import Path


def encode_ppm(image: np.ndarray) -> bytes:
    """P6 encoding of an (h, w, 3) uint8 image, top row first."""
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
        raise ConfigurationError(f"expected an (h, w, 3) uint8 image, got {image.shape} {image.dtype}")
    h, w, _ = image.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(image).tobytes()


def write_ppm(image: np.ndarray, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(encode_ppm(image))
