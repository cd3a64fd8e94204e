"""Numpy-vectorized kernels used when numba is disabled.

These mirror the signatures of their loop counterparts in
:mod:`convexity._kernels` and must return identical results.  Vectorization
happens per BFS level (frontier expansion) rather than per node.
"""

import numpy as np

from ._kernels import UNREACHED


def gather(indptr, indices, nodes):
    """Concatenated neighbor lists of ``nodes`` (with repetition)."""
    starts = indptr[nodes]
    lens = indptr[nodes + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, indices.dtype)
    offsets = np.repeat(starts - np.cumsum(lens) + lens, lens)
    return indices[offsets + np.arange(total)]


def _levels(indptr, indices, source, n):
    dist = np.full(n, UNREACHED, np.int32)
    dist[source] = 0
    frontier = np.array([source], np.int64)
    levels = [frontier]
    d = 0
    while frontier.size:
        nb = gather(indptr, indices, frontier)
        nb = np.unique(nb[dist[nb] == UNREACHED])
        d += 1
        dist[nb] = d
        frontier = nb.astype(np.int64)
        if frontier.size:
            levels.append(frontier)
    return dist, levels


def bfs(indptr, indices, source):
    n = indptr.shape[0] - 1
    return _levels(indptr, indices, source, n)[0]


def all_sources(indptr, indices):
    n = indptr.shape[0] - 1
    total = np.zeros(n, np.int64)
    ecc = np.zeros(n, np.int32)
    reached = np.zeros(n, np.int32)
    for s in range(n):
        dist, levels = _levels(indptr, indices, s, n)
        ok = dist != UNREACHED
        reached[s] = ok.sum()
        total[s] = dist[ok].sum(dtype=np.int64)
        ecc[s] = len(levels) - 1
    return total, ecc, reached


def distance_matrix(indptr, indices):
    n = indptr.shape[0] - 1
    return np.stack([bfs(indptr, indices, s) for s in range(n)]) if n else \
        np.empty((0, 0), np.int32)


def _geodesic_sweep(indptr, indices, member, u):
    """Nodes on some geodesic from ``u`` to a member, plus max distance."""
    n = member.shape[0]
    dist, levels = _levels(indptr, indices, u, n)
    onpath = member.astype(bool)
    reached = dist != UNREACHED
    diam = int(dist[onpath & reached].max())
    for d in range(len(levels) - 2, -1, -1):
        hot = levels[d + 1][onpath[levels[d + 1]]]
        if hot.size == 0:
            continue
        nb = gather(indptr, indices, hot)
        onpath[nb[dist[nb] == d]] = True
    return onpath, diam


def _close(indptr, indices, member, work, pos, cap):
    """Process ``work[pos:]`` (a list, extended in place); returns diameter part."""
    n = member.shape[0]
    diam = 0
    size = int(member.sum())
    while pos < len(work) and size <= cap:
        u = work[pos]
        pos += 1
        onpath, d = _geodesic_sweep(indptr, indices, member, u)
        diam = max(diam, d)
        new = np.flatnonzero(onpath & ~member)
        member[new] = True
        work.extend(new.tolist())
        size += new.size
        if size == n:
            for v in work[pos:]:
                diam = max(diam, int(bfs(indptr, indices, v).max()))
            break
    return diam


def convex_hull(indptr, indices, seeds):
    n = indptr.shape[0] - 1
    member = np.zeros(n, bool)
    member[np.asarray(seeds, np.int64)] = True
    _close(indptr, indices, member, np.flatnonzero(member).tolist(), 0, n)
    return member.astype(np.uint8)


def expand_run(indptr, indices, seed, uniforms, max_steps, checkpoint,
               sizes, diams, snapshot):
    n = indptr.shape[0] - 1
    member = np.zeros(n, bool)
    member[seed] = True
    work = [int(seed)]
    sizes[0] = 1
    diams[0] = 0
    diam = 0
    if checkpoint == 0:
        snapshot[:] = member
    t = 0
    size = 1
    while size < n and t < max_steps:
        t += 1
        cnt = np.bincount(gather(indptr, indices, np.flatnonzero(member)),
                          minlength=n)
        cum = np.cumsum(np.where(member, 0, cnt))
        boundary = int(cum[-1])
        r = min(int(uniforms[t - 1] * boundary), boundary - 1)
        pick = int(np.searchsorted(cum, r, side="right"))
        member[pick] = True
        pos = len(work)
        work.append(pick)
        diam = max(diam, _close(indptr, indices, member, work, pos, n))
        size = int(member.sum())
        sizes[t] = size
        diams[t] = diam
        if t == checkpoint:
            snapshot[:] = member
    if t < checkpoint:
        snapshot[:] = member
    return t


def triangles(indptr, indices):
    n = indptr.shape[0] - 1
    acc = np.zeros(n, np.int64)
    mu = 0
    src = np.repeat(np.arange(n), np.diff(indptr))
    upper = src < indices
    for u, v in zip(src[upper], indices[upper]):
        c = np.intersect1d(indices[indptr[u]:indptr[u + 1]],
                           indices[indptr[v]:indptr[v + 1]],
                           assume_unique=True).size
        acc[u] += c
        acc[v] += c
        mu = max(mu, c)
    return acc // 2, mu


def core_numbers(indptr, indices):
    """Wave peeling: strip every node of degree <= k until none is left, k += 1."""
    n = indptr.shape[0] - 1
    deg = np.diff(indptr).astype(np.int64)
    alive = np.ones(n, bool)
    core = np.zeros(n, np.int64)
    k = 0
    while alive.any():
        k = max(k, int(deg[alive].min()))
        while True:
            wave = np.flatnonzero(alive & (deg <= k))
            if wave.size == 0:
                break
            core[wave] = k
            alive[wave] = False
            np.subtract.at(deg, gather(indptr, indices, wave), 1)
    return core
