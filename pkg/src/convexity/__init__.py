"""Convexity analysis of networks: convex hulls, expansion, graphlets, null models."""

from ._accel import BACKEND
from .expansion import (
    AggregatedCurve,
    ExpansionConfig,
    ExpansionTrace,
    aggregate_curves,
    expand_ensemble,
    expand_once,
)
from .graph import (
    Graph,
    GraphStats,
    bfs_distances,
    build_graph,
    convex_hull,
    geodesic_interval,
    graph_stats,
    hull_number_bruteforce,
    induced_diameter,
    is_convex,
    k_core,
    largest_component,
)
from .graphlets import CLASSES, GraphletCensus, census, convex_probabilities
from .measures import (
    CorePeripheryPartition,
    compare_with_kcore,
    detect_c_core,
    max_convex_size,
    mean_x_convexity,
    partition_densities,
    x_convexity,
)
from .random_models import (
    expansion_threshold,
    expected_graphlet_counts,
    gen_er_connected,
    local_convexity_threshold,
    prior_graphlet_convexity,
    prior_overall,
    rewire_preserving_degrees,
    sample_connected_induced,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
