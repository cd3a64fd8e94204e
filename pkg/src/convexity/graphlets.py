"""Census of connected induced subgraphs on 2-4 nodes and their convexity.

Class ids follow the usual drawing order: G0 edge, G1 path on three nodes,
G2 triangle, G3 path on four nodes, G4 star, G5 four-cycle, G6 paw (triangle
with a pendant), G7 diamond (four-clique minus an edge), G8 four-clique.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from ._accel import USE_NUMBA, thread_count
from .graph import Graph


@dataclass(frozen=True)
class GraphletClass:
    id: int
    name: str
    size: int
    edges: int
    labeled_copies: int  # labeled graphs on `size` vertices isomorphic to it
    clique: bool


CLASSES = (
    GraphletClass(0, "edge", 2, 1, 1, True),
    GraphletClass(1, "path3", 3, 2, 3, False),
    GraphletClass(2, "triangle", 3, 3, 1, True),
    GraphletClass(3, "path4", 4, 3, 12, False),
    GraphletClass(4, "star", 4, 3, 4, False),
    GraphletClass(5, "cycle4", 4, 4, 3, False),
    GraphletClass(6, "paw", 4, 4, 12, False),
    GraphletClass(7, "diamond", 4, 5, 6, False),
    GraphletClass(8, "clique4", 4, 6, 1, True),
)
SIZES = np.array([cl.size for cl in CLASSES])
EDGES = np.array([cl.edges for cl in CLASSES])
LABELED = np.array([cl.labeled_copies for cl in CLASSES])


@dataclass(frozen=True, eq=False)
class GraphletCensus:
    """Induced counts ``g`` and convex counts ``c`` per class.

    In sampled mode the counts are unbiased estimates and ``g_se``/``c_se``
    hold their standard errors; ``sample_size`` is per subgraph size.
    """

    g: np.ndarray
    c: np.ndarray
    mode: str = "exact"
    sample_size: int | None = None
    g_se: np.ndarray | None = None
    c_se: np.ndarray | None = None


def classify(g: Graph, nodes) -> int:
    """Class id of the connected subgraph induced by 2-4 ``nodes``."""
    arr = np.zeros(4, np.int32)
    nodes = list(nodes)
    if not 2 <= len(nodes) <= 4:
        raise ValueError("graphlets have 2 to 4 nodes")
    arr[:len(nodes)] = nodes
    return int(K._loops.classify_small(g.indptr, g.indices, arr, len(nodes)))


def census(g: Graph, mode: str = "exact", sample_size: int | None = None,
           rng: np.random.Generator | None = None,
           threads: int | None = None) -> GraphletCensus:
    """Count induced and convex instances of every class."""
    if mode == "exact":
        return _census_exact(g, threads)
    if mode != "sampled":
        raise ValueError("mode must be 'exact' or 'sampled'")
    if sample_size is None or sample_size <= 0:
        raise ValueError("sample_size must be positive in sampled mode")
    if rng is None:
        rng = np.random.default_rng()
    return _census_sampled(g, sample_size, rng)


def _census_exact(g, threads):
    roots = np.arange(g.n, dtype=np.int64)
    workers = thread_count() if threads is None else max(1, threads)
    if USE_NUMBA and workers > 1 and g.n >= 256:
        # interleave roots so low ids (often hubs) spread across chunks
        chunks = [roots[i::workers * 4] for i in range(workers * 4)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda r: K.census_exact(g.indptr, g.indices, r), chunks))
        gc = sum(p[0] for p in parts)
        cc = sum(p[1] for p in parts)
    else:
        gc, cc = K.census_exact(g.indptr, g.indices, roots)
    return GraphletCensus(g=np.asarray(gc, np.int64), c=np.asarray(cc, np.int64))


def _census_sampled(g, samples, rng):
    gest = np.zeros(9)
    cest = np.zeros(9)
    gse = np.zeros(9)
    cse = np.zeros(9)
    gest[0] = cest[0] = g.m
    for k in (3, 4):
        uniforms = rng.random((samples, k))
        cls, conv, w = K.census_sampled(g.indptr, g.indices, k, uniforms)
        for i in np.flatnonzero(SIZES == k):
            hit = np.where(cls == i, w, 0.0)
            chit = np.where((cls == i) & (conv == 1), w, 0.0)
            gest[i] = hit.mean()
            cest[i] = chit.mean()
            if samples > 1:
                gse[i] = hit.std(ddof=1) / np.sqrt(samples)
                cse[i] = chit.std(ddof=1) / np.sqrt(samples)
    return GraphletCensus(g=gest, c=cest, mode="sampled", sample_size=samples,
                          g_se=gse, c_se=cse)


def convex_probabilities(cen: GraphletCensus, include_edges: bool = False):
    """Per-class convex fractions ``c_i / g_i`` and the pooled fraction.

    Classes with ``g_i = 0`` get NaN.  The pooled fraction skips the edge
    class unless ``include_edges`` is set, since edges are convex trivially.
    """
    g = np.asarray(cen.g, float)
    c = np.asarray(cen.c, float)
    per = np.divide(c, g, out=np.full(9, np.nan), where=g > 0)
    sel = slice(0, 9) if include_edges else slice(1, 9)
    tot = g[sel].sum()
    overall = float(c[sel].sum() / tot) if tot > 0 else float("nan")
    return per, overall
