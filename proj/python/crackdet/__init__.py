"""Crack pre-detection for 3D CT volumes."""

from ._core import (
    Error,
    connected_components,
    delta_max,
    detect,
    generate_scene,
    hessian_entry,
    max_entry_response,
    multiscale_filter,
    read_volume,
    reference_scene_config,
    region_metrics,
    region_truth,
    simulate_miss_probability,
    write_volume,
)

__all__ = [
    "Error",
    "connected_components",
    "delta_max",
    "detect",
    "generate_scene",
    "hessian_entry",
    "max_entry_response",
    "multiscale_filter",
    "read_volume",
    "reference_scene_config",
    "region_metrics",
    "region_truth",
    "simulate_miss_probability",
    "write_volume",
]
