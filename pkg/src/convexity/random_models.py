"""Random-graph null models and analytic convexity baselines for G(n, p)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, log, sqrt

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln, logsumexp

from . import kernels as K
from .graph import Graph, _from_compact, is_connected
from .graphlets import EDGES, LABELED, SIZES

REJECTION_CAP = 10_000


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _decode_pairs(keys, n):
    """Row-major upper-triangle index -> (i, j) with i < j."""
    keys = np.asarray(keys, np.int64)
    total = n * (n - 1) // 2
    # row i starts at total - (n-i)(n-i-1)/2
    rest = total - 1 - keys
    r = ((np.sqrt(8.0 * rest + 1) - 1) / 2).astype(np.int64)
    # fix float rounding at row boundaries
    r += ((r + 1) * (r + 2) // 2 <= rest).astype(np.int64)
    r -= (r * (r + 1) // 2 > rest).astype(np.int64)
    i = n - 2 - r
    start = total - (n - i) * (n - i - 1) // 2
    j = keys - start + i + 1
    return np.column_stack([i, j])


def _check_nm(n, m):
    if n < 2:
        raise ValueError("n must be >= 2")
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise ValueError(f"m must lie in [{n - 1}, {n * (n - 1) // 2}] for n={n}")


def _graph(n, edges):
    return _from_compact(n, edges, np.arange(n))


def gen_er_connected(n: int, m: int, rng: np.random.Generator,
                     max_attempts: int = REJECTION_CAP) -> Graph:
    """Uniform connected graph with ``n`` nodes and ``m`` edges, by rejection."""
    _check_nm(n, m)
    total = n * (n - 1) // 2
    for _ in range(max_attempts):
        keys = rng.choice(total, size=m, replace=False)
        g = _graph(n, _decode_pairs(np.sort(keys), n))
        if is_connected(g):
            return g
    raise RuntimeError("connectivity rejection cap reached "
                       f"({max_attempts} attempts for n={n}, m={m})")


def gen_gnp_connected(n: int, p: float, rng: np.random.Generator,
                      max_attempts: int = REJECTION_CAP) -> Graph:
    """G(n, p) conditioned on connectivity, by rejection."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    total = n * (n - 1) // 2
    for _ in range(max_attempts):
        keys = np.flatnonzero(rng.random(total) < p)
        if keys.shape[0] < n - 1:
            continue
        g = _graph(n, _decode_pairs(keys, n))
        if is_connected(g):
            return g
    raise RuntimeError("connectivity rejection cap reached "
                       f"({max_attempts} attempts for n={n}, p={p})")


def _random_connected_start(n, m, rng):
    """Random recursive tree plus uniform extra edges."""
    perm = rng.permutation(n)
    parent = perm[(rng.random(n - 1) * np.arange(1, n)).astype(np.int64)]
    tree = np.sort(np.column_stack([perm[1:], parent]), axis=1)
    keys = set((tree[:, 0] * n + tree[:, 1]).tolist())
    extra = m - (n - 1)
    while extra > 0:
        cand = _decode_pairs(rng.integers(n * (n - 1) // 2, size=2 * extra + 16), n)
        for a, b in cand:
            k = int(a) * n + int(b)
            if k not in keys:
                keys.add(k)
                extra -= 1
                if extra == 0:
                    break
    arr = np.array(sorted(keys), np.int64)
    return np.column_stack([arr // n, arr % n])


def er_connected_walk(n: int, m: int, rng: np.random.Generator,
                      steps: int | None = None) -> Graph:
    """Approximately uniform connected G(n, m) by an edge-relocation walk.

    For sparse parameters where rejection almost never yields a connected
    graph.  Starts from a random tree plus extra edges and attempts ``steps``
    relocations (default ``10 m``), rejecting those that disconnect.
    """
    _check_nm(n, m)
    steps = 10 * m if steps is None else steps
    edges = _random_connected_start(n, m, rng)
    pick_e = rng.integers(m, size=steps)
    pick_x = rng.integers(n, size=steps)
    pick_y = rng.integers(n, size=steps)
    deg = np.bincount(edges.ravel(), minlength=n).astype(np.int64)
    cap = max(16, 2 * int(deg.max()))
    start = 0
    while True:
        ptr = np.arange(n, dtype=np.int64) * cap
        nbr = np.empty(n * cap, np.int64)
        fill = ptr.copy()
        for a, b in edges:
            nbr[fill[a]] = b
            fill[a] += 1
            nbr[fill[b]] = a
            fill[b] += 1
        deg = fill - ptr
        start = int(K.edge_walk(ptr, nbr, deg, cap, edges, pick_e, pick_x, pick_y, start))
        if start >= steps:
            break
        cap *= 2
    return _graph(n, np.sort(edges, axis=1))


def rewire_preserving_degrees(g: Graph, rng: np.random.Generator,
                              steps: int | None = None,
                              return_accepted: bool = False):
    """Connected graph with the same degrees after ``steps`` double-edge swaps.

    Swaps producing a loop, a parallel edge or a disconnected graph are
    rejected and still count as attempts.  Default ``steps`` is ``10 m``.
    """
    steps = 10 * g.m if steps is None else steps
    edges = g.edges()
    adj = g.indices.astype(np.int64)
    pick_a = rng.integers(g.m, size=steps)
    pick_b = rng.integers(g.m, size=steps)
    flips = rng.integers(4, size=steps)
    accepted = int(K.double_edge_swaps(g.indptr, adj, edges, pick_a, pick_b, flips))
    out = _from_compact(g.n, np.sort(edges, axis=1), g.labels)
    return (out, accepted) if return_accepted else out


# ---------------------------------------------------------------------------
# analytic baselines
# ---------------------------------------------------------------------------

def _check_p(p):
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")


PATH_FORMS = ("closed", "exact")


def _path_exact(n, p):
    """Path-on-four-nodes prior summed over the outside neighbors of one end.

    ``a`` outside nodes hang off end 1 and ``b`` off end 4 (each with at most
    the adjacent inner node too); a path of length three through the outside
    exists iff one of the ``a*b`` cross pairs is an edge.
    """
    q = 1.0 - p
    r = n - 4
    allowed = 1 - 3 * p**2 + 2 * p**3
    end = p * q**3 + p**2 * q**2
    other = allowed - 2 * end
    a = np.arange(r + 1)
    terms = (gammaln(r + 1) - gammaln(a + 1) - gammaln(r - a + 1)
             + a * np.log(end) + (r - a) * np.log(other + end * q**a))
    return float(np.exp(logsumexp(terms)))


def prior_graphlet_convexity(n: int, p: float, path_form: str = "closed") -> np.ndarray:
    """Probability that an induced instance of each class is convex in G(n, p).

    ``path_form`` selects the path-on-four-nodes prior: "closed" uses the
    mean-field factor ``(1-p)^(p^2 (n-4)^2)`` for length-three detours,
    "exact" sums over the neighbor counts of the two ends.
    """
    _check_p(p)
    if n < 5:
        raise ValueError("n must be >= 5")
    if path_form not in PATH_FORMS:
        raise ValueError(f"path_form must be one of {PATH_FORMS}")
    q = 1.0 - p
    r = n - 4
    out = np.ones(9)
    out[1] = (1 - p**2) ** (n - 3)
    # each outside node avoids every length-2 shortcut between non-adjacent ends
    no_shortcut = 1 - 3 * p**2 + 2 * p**3
    if path_form == "closed":
        out[3] = no_shortcut**r * q ** (p**2 * r**2)
    else:
        out[3] = _path_exact(n, p)
    out[4] = no_shortcut**r
    out[5] = (1 - 2 * p**2 + p**4) ** r
    out[6] = (1 - 2 * p**2 + p**3) ** r
    out[7] = (1 - p**2) ** r
    return out


def expected_graphlet_counts(n: int, p: float) -> np.ndarray:
    """Mean number of induced instances of each class in G(n, p)."""
    if n < 4:
        raise ValueError("n must be >= 4")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    out = np.empty(9)
    for i in range(9):
        s, e = int(SIZES[i]), int(EDGES[i])
        out[i] = comb(n, s) * LABELED[i] * p**e * (1 - p) ** (comb(s, 2) - e)
    return out


@dataclass(frozen=True, eq=False)
class PriorVector:
    n: int
    avg_degree: float
    p: float
    per_class: np.ndarray
    expected_counts: np.ndarray
    overall: float
    local_threshold: float


def prior_overall(n: int, avg_degree: float, include_edges: bool = False,
                  path_form: str = "closed") -> float:
    """Count-weighted mean of the class priors, with ``p = <k>/(n-1)``.

    The edge class is left out unless ``include_edges`` is set.
    """
    if not 0 < avg_degree < n - 1:
        raise ValueError("avg_degree must lie in (0, n-1)")
    p = avg_degree / (n - 1)
    prior = prior_graphlet_convexity(n, p, path_form)
    counts = expected_graphlet_counts(n, p)
    lo = 0 if include_edges else 1
    return float(np.dot(counts[lo:], prior[lo:]) / counts[lo:].sum())


def local_convexity_threshold(n: int, avg_degree: float) -> float:
    if avg_degree <= 1:
        raise ValueError("avg_degree must be > 1")
    return log(n) / log(avg_degree)


def expansion_threshold(n: int, avg_degree: float) -> float:
    """Root ``s`` of ``<k>^sqrt(s) * s(s-1)/2 = n`` on ``[2, n]``."""
    if avg_degree <= 1:
        raise ValueError("avg_degree must be > 1")

    lk = log(avg_degree)
    ln_n = log(n)

    def f(s):
        # log form; the left side is increasing on [2, n]
        return sqrt(s) * lk + log(s * (s - 1) / 2) - ln_n

    if f(2.0) > 0:
        raise ValueError("no root in [2, n]: n too small for this avg_degree")
    return float(brentq(f, 2.0, float(n), xtol=1e-12, rtol=4 * np.finfo(float).eps,
                        maxiter=500))


def priors(n: int, avg_degree: float, include_edges: bool = False,
           path_form: str = "closed") -> PriorVector:
    p = avg_degree / (n - 1)
    per = prior_graphlet_convexity(n, p, path_form)
    counts = expected_graphlet_counts(n, p)
    return PriorVector(n=n, avg_degree=avg_degree, p=p, per_class=per,
                       expected_counts=counts,
                       overall=prior_overall(n, avg_degree, include_edges, path_form),
                       local_threshold=local_convexity_threshold(n, avg_degree))


# ---------------------------------------------------------------------------
# random connected subsets
# ---------------------------------------------------------------------------

def sample_connected_induced(g: Graph, size: int, samples: int,
                             rng: np.random.Generator,
                             max_draws: int = 50_000_000,
                             batch: int = 100_000):
    """Convex fraction among uniform ``size``-subsets inducing connected subgraphs.

    Draws until ``samples`` connected subsets are found or ``max_draws``
    subsets were tried.  Returns ``(fraction, binomial standard error)``.
    """
    if not 2 <= size <= g.n:
        raise ValueError("size must lie in [2, n]")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    found = 0
    convex = 0
    drawn = 0
    while found < samples and drawn < max_draws:
        rows = rng.integers(g.n, size=(batch, size))
        srt = np.sort(rows, axis=1)
        rows = rows[(np.diff(srt, axis=1) > 0).all(axis=1)]
        drawn += batch
        conn, conv = K.subsets_connected_convex(g.indptr, g.indices, rows)
        hit = np.flatnonzero(conn)[:samples - found]
        found += hit.shape[0]
        convex += int(conv[hit].sum())
    if found == 0:
        raise RuntimeError("no connected subsets found within the draw cap")
    frac = convex / found
    return frac, sqrt(frac * (1 - frac) / found)
