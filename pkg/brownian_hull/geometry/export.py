"""Raster exports: winding CSV with a grid sidecar, PBM masks."""

from __future__ import annotations

import csv
import json
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from pathlib import Path

    from brownian_hull.geometry.grid import GridSpec
    from brownian_hull.geometry.raster import CellMask
    from brownian_hull.geometry.winding import WindingField


def export_winding_csv(field: WindingField, grid: GridSpec, out: Path) -> Path:
    """Write `i,j,n` for unblocked cells and the grid as `<out>.grid.json`."""
    js, is_ = np.nonzero(~field.blocked)
    with out.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["i", "j", "n"])
        writer.writerows(zip(is_.tolist(), js.tolist(), field.values[js, is_].tolist(), strict=True))
    sidecar = out.with_name(out.name + ".grid.json")
    sidecar.write_text(json.dumps(grid.to_dict(), indent=2), encoding="utf-8")
    return sidecar


def format_pbm(mask: CellMask) -> str:
    """Plain PBM (P1); the top text row is the highest grid row."""
    bits = mask.bits[::-1].astype(np.uint8)
    ny, nx = bits.shape
    lines = ["P1", f"# {mask.role.value}", f"{nx} {ny}"]
    lines.extend(" ".join(map(str, row)) for row in bits.tolist())
    return "\n".join(lines) + "\n"


def export_mask_pbm(mask: CellMask, out: Path) -> None:
    out.write_text(format_pbm(mask), encoding="utf-8")
