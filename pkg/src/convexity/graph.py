"""Simple undirected graphs in CSR form, geodesics, convexity and hulls.

Node sets are plain ``frozenset`` objects of compact node ids; every function
that takes a set also accepts any iterable of ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K

UNREACHED = K.UNREACHED


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    ``indices[indptr[i]:indptr[i+1]]`` are the neighbors of node ``i`` in
    ascending order.  ``labels[i]`` is the node's original identifier.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    _degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.labels):
            arr.setflags(write=False)
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        object.__setattr__(self, "_degrees", deg)

    @property
    def n(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def m(self) -> int:
        return self.indices.shape[0] // 2

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        j = np.searchsorted(nb, v)
        return bool(j < nb.shape[0] and nb[j] == v)

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep].astype(np.int64)])

    def subgraph(self, nodes) -> Graph:
        """Induced subgraph on ``nodes`` (compacted in ascending id order)."""
        nodes = np.unique(np.asarray(list(nodes), dtype=np.int64))
        remap = np.full(self.n, -1, np.int64)
        remap[nodes] = np.arange(nodes.shape[0])
        e = self.edges()
        keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        return _from_compact(nodes.shape[0], remap[e[keep]], self.labels[nodes])

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _from_compact(n, edges, labels):
    """CSR from an edge array over ids ``0..n-1`` with no loops or duplicates."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    both = np.concatenate([edges, edges[:, ::-1]])
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    counts = np.bincount(both[:, 0], minlength=n)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(indptr, both[:, 1].astype(np.int32),
                 np.asarray(labels, dtype=np.int64).copy())


def build_graph(edges) -> Graph:
    """Simple graph from id pairs.

    Self-loops are dropped, duplicates and reversed duplicates merged, and
    ids compacted to ``0..n-1`` in ascending order of the original id.
    """
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("empty graph")
    arr = arr.reshape(-1, 2)
    if (arr < 0).any():
        raise ValueError("node ids must be non-negative integers")
    labels, compact = np.unique(arr, return_inverse=True)
    compact = compact.reshape(-1, 2)
    compact = compact[compact[:, 0] != compact[:, 1]]
    compact = np.unique(np.sort(compact, axis=1), axis=0)
    return _from_compact(labels.shape[0], compact, labels)


def largest_component(g: Graph):
    """Largest connected component and the old->new id map (-1 if dropped).

    Ties go to the component holding the smallest original id.
    """
    label = K.component_labels(g.indptr, g.indices)
    sizes = np.bincount(label)
    # component ids are assigned in ascending node order, and node order
    # follows original ids, so argmax picks the smallest-id tie
    best = int(np.argmax(sizes))
    keep = np.flatnonzero(label == best)
    mapping = np.full(g.n, -1, np.int64)
    mapping[keep] = np.arange(keep.shape[0])
    if keep.shape[0] == g.n:
        return g, mapping
    return g.subgraph(keep), mapping


def is_connected(g: Graph) -> bool:
    return g.n > 0 and int(K.component_labels(g.indptr, g.indices).max()) == 0


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable nodes hold ``UNREACHED``."""
    _check_node(g, source)
    return K.bfs(g.indptr, g.indices, int(source))


def distance_matrix(g: Graph) -> np.ndarray:
    return K.distance_matrix(g.indptr, g.indices)


def geodesic_interval(g: Graph, u: int, v: int) -> frozenset:
    """Nodes on at least one shortest u-v path, endpoints included."""
    du = bfs_distances(g, u)
    _check_node(g, v)
    if du[v] == UNREACHED:
        raise ValueError(f"nodes {u} and {v} are not connected")
    dv = K.bfs(g.indptr, g.indices, int(v))
    on = (du.astype(np.int64) + dv) == du[v]
    return frozenset(np.flatnonzero(on).tolist())


def convex_hull(g: Graph, s) -> frozenset:
    """Smallest convex node set containing ``s``."""
    seeds = _as_array(g, s)
    if seeds.shape[0] == 0:
        raise ValueError("empty node set")
    mask = K.convex_hull(g.indptr, g.indices, seeds)
    return frozenset(np.flatnonzero(mask).tolist())


def is_convex(g: Graph, s) -> bool:
    """Whether the connected subset ``s`` contains every geodesic between its nodes."""
    seeds = _as_array(g, s)
    if seeds.shape[0] == 0:
        raise ValueError("empty node set")
    mask = np.zeros(g.n, np.uint8)
    mask[seeds] = 1
    if K.induced_diameter(g.indptr, g.indices, mask) < 0:
        raise ValueError("not a connected subset")
    hull = K.convex_hull(g.indptr, g.indices, seeds)
    return int(hull.sum()) == int(np.unique(seeds).shape[0])


def induced_diameter(g: Graph, s) -> int:
    """Largest distance measured inside the subgraph induced by ``s``."""
    seeds = _as_array(g, s)
    mask = np.zeros(g.n, np.uint8)
    mask[seeds] = 1
    d = int(K.induced_diameter(g.indptr, g.indices, mask))
    if d < 0 or seeds.shape[0] == 0:
        raise ValueError("not a connected subset")
    return d


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    avg_degree: float
    avg_clustering: float
    avg_geodesic: float
    mu: int
    degree: np.ndarray
    triangles: np.ndarray
    clustering: np.ndarray
    clustering_mu: np.ndarray
    mean_distance: np.ndarray

    def row(self) -> dict:
        """The Table-1 style summary columns."""
        return {"n": self.n, "m": self.m, "avg_degree": self.avg_degree,
                "avg_clustering": self.avg_clustering,
                "avg_geodesic": self.avg_geodesic}


def graph_stats(g: Graph) -> GraphStats:
    """Degree, clustering and geodesic statistics of a connected graph."""
    n = g.n
    deg = g.degrees.astype(np.int64)
    tri, mu = K.triangles(g.indptr, g.indices)
    tri = np.asarray(tri, np.int64)
    mu = int(mu)
    pairs = deg * (deg - 1)
    clus = np.divide(2.0 * tri, pairs, out=np.zeros(n), where=pairs > 0)
    denom = deg * mu
    clus_mu = np.divide(2.0 * tri, denom, out=np.zeros(n), where=denom > 0)
    total, _, reached = K.all_sources(g.indptr, g.indices)
    if n > 1 and (reached != n).any():
        raise ValueError("graph_stats needs a connected graph")
    ell = total / (n - 1) if n > 1 else np.zeros(n)
    return GraphStats(
        n=n, m=g.m,
        avg_degree=2.0 * g.m / n,
        avg_clustering=float(clus.mean()),
        avg_geodesic=float(ell.mean()) if n > 1 else 0.0,
        mu=mu, degree=deg, triangles=tri, clustering=clus,
        clustering_mu=clus_mu, mean_distance=ell,
    )


def k_core(g: Graph) -> np.ndarray:
    """Core number of every node."""
    return np.asarray(K.core_numbers(g.indptr, g.indices), np.int64)


def hull_number_bruteforce(g: Graph, node_limit: int = 16) -> int:
    """Exact hull number by subset search in increasing size order."""
    if g.n > node_limit:
        raise ValueError("graph too large for exact hull number")
    if g.n == 1:
        return 1
    for size in range(2, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            hull = K.convex_hull(g.indptr, g.indices, np.array(combo, np.int64))
            if int(hull.sum()) == g.n:
                return size
    return g.n


def _check_node(g, i):
    if not 0 <= int(i) < g.n:
        raise ValueError(f"node {i} out of range for n={g.n}")


def _as_array(g, s):
    arr = np.fromiter((int(x) for x in s), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= g.n):
        raise ValueError(f"node set has ids outside [0, {g.n})")
    return arr
