"""Exact ribbon graph engine, generative censuses, and bound evaluation
for counting critical points of systole functions on moduli space."""

from .ribbon import (
    CombinatorialMap,
    SurfaceStats,
    GraphStats,
    canonical_form,
    format_map,
    graph_cycle_rank,
    induced_submap,
    is_filling_subgraph,
    mirror,
    parse_map,
    spanning_tree,
    surface_stats,
    trace_faces,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CombinatorialMap",
    "SurfaceStats",
    "GraphStats",
    "canonical_form",
    "format_map",
    "graph_cycle_rank",
    "induced_submap",
    "is_filling_subgraph",
    "mirror",
    "parse_map",
    "spanning_tree",
    "surface_stats",
    "trace_faces",
    "validate",
    "__version__",
]
