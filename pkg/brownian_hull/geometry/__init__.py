"""Hull and winding-number geometry on uniform grids."""

from brownian_hull.geometry.band import BAND_POINTS, BandEstimate, band_mask, band_region_areas
from brownian_hull.geometry.export import export_mask_pbm, export_winding_csv, format_pbm
from brownian_hull.geometry.grid import GridSpec, grid_for_path, has_row_degeneracy
from brownian_hull.geometry.raster import (
    CellMask,
    MaskRole,
    flood_fill_outside,
    hull_mask,
    rasterize_path,
)
from brownian_hull.geometry.regions import (
    HullAreas,
    PathAnalysis,
    RegionAreas,
    analyze_path,
    hull_area,
    region_areas,
)
from brownian_hull.geometry.winding import (
    ON_PATH,
    WindingField,
    angle_winding,
    angle_windings,
    center_windings,
    distance_to_path,
    shoelace_area,
    winding_field,
)

__all__ = [
    "BAND_POINTS",
    "ON_PATH",
    "BandEstimate",
    "CellMask",
    "GridSpec",
    "HullAreas",
    "MaskRole",
    "PathAnalysis",
    "RegionAreas",
    "WindingField",
    "analyze_path",
    "angle_winding",
    "angle_windings",
    "band_mask",
    "band_region_areas",
    "center_windings",
    "distance_to_path",
    "export_mask_pbm",
    "export_winding_csv",
    "flood_fill_outside",
    "format_pbm",
    "grid_for_path",
    "has_row_degeneracy",
    "hull_area",
    "hull_mask",
    "rasterize_path",
    "region_areas",
    "shoelace_area",
    "winding_field",
]
