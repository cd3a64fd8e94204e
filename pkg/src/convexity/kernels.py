"""Active kernel set for the selected backend.

With numba enabled every name resolves to the compiled loop kernel.  On the
numpy path the BFS, hull, expansion, triangle and core kernels are replaced by
their vectorized versions; the rest run as interpreted loops.
"""

from ._accel import BACKEND, USE_NUMBA
from . import _kernels as _loops
from ._kernels import UNREACHED

census_exact = _loops.census_exact
census_sampled = _loops.census_sampled
component_labels = _loops.component_labels
double_edge_swaps = _loops.double_edge_swaps
edge_walk = _loops.edge_walk
induced_diameter = _loops.induced_diameter
subsets_connected_convex = _loops.subsets_connected_convex

if USE_NUMBA:
    all_sources = _loops.all_sources
    bfs = _loops.bfs
    convex_hull = _loops.convex_hull
    core_numbers = _loops.core_numbers
    distance_matrix = _loops.distance_matrix
    expand_run = _loops.expand_run
    triangles = _loops.triangles
else:
    from ._vectorized import (  # noqa: F401
        all_sources,
        bfs,
        convex_hull,
        core_numbers,
        distance_matrix,
        expand_run,
        triangles,
    )

__all__ = [
    "BACKEND", "UNREACHED", "all_sources", "bfs", "census_exact",
    "census_sampled", "component_labels", "convex_hull", "core_numbers",
    "distance_matrix", "double_edge_swaps", "edge_walk", "expand_run",
    "induced_diameter", "subsets_connected_convex", "triangles",
]
