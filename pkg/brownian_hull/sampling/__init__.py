"""Loop samplers: Gaussian bridges, lattice loops and the Vervaat shift."""

from brownian_hull.sampling.bridge import (
    horizontal_step_weights,
    rescale_lattice,
    sample_gaussian_bridge,
    sample_lattice_loop,
    sample_loop,
)
from brownian_hull.sampling.paths import (
    BridgeSpec,
    LoopPath,
    format_path,
    parse_path,
    read_path,
    write_path,
)
from brownian_hull.sampling.refine import (
    REACH,
    bridge_turns,
    refinable,
    refined_winding,
    split_segments,
    step_variance,
)
from brownian_hull.sampling.vervaat import (
    EXCURSION_MIDPOINT_MEAN,
    ExcursionProfile,
    excursion_profile,
    lowest_index,
    midpoint_height,
    vervaat_transform,
)

__all__ = [
    "EXCURSION_MIDPOINT_MEAN",
    "REACH",
    "BridgeSpec",
    "ExcursionProfile",
    "LoopPath",
    "bridge_turns",
    "excursion_profile",
    "format_path",
    "horizontal_step_weights",
    "lowest_index",
    "midpoint_height",
    "parse_path",
    "read_path",
    "refinable",
    "refined_winding",
    "rescale_lattice",
    "sample_gaussian_bridge",
    "sample_lattice_loop",
    "sample_loop",
    "split_segments",
    "step_variance",
    "vervaat_transform",
]
