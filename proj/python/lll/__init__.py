"""Python bindings for the graph local-geometry toolkit."""

from ._lll import (
    FormatError,
    Graph,
    ball_census,
    bfs_distances,
    canonical_code,
    cell_sizes,
    diameter,
    generate,
    gh_exact_small,
    load_graph,
    local_gh_to_line,
    locality_radius,
    max_geodesic,
)

__all__ = [
    "FormatError",
    "Graph",
    "ball_census",
    "bfs_distances",
    "canonical_code",
    "cell_sizes",
    "diameter",
    "generate",
    "gh_exact_small",
    "load_graph",
    "local_gh_to_line",
    "locality_radius",
    "max_geodesic",
]
