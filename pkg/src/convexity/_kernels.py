"""Loop kernels over CSR adjacency (``indptr`` int64, ``indices`` int32).

Every function here is decorated with :func:`convexity._accel.jit`, so it is
either numba-compiled or plain Python depending on the backend flag.  Callers
go through :mod:`convexity.kernels`, which may substitute numpy-vectorized
versions on the fallback path.
"""

import numpy as np

from ._accel import jit

UNREACHED = 2147483647  # int32 max; never escapes public results

# graphlet class ids, see graphlets.CLASSES
EDGE, PATH3, TRIANGLE, PATH4, STAR, CYCLE4, PAW, DIAMOND, CLIQUE4 = range(9)


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------

@jit
def bfs_into(indptr, indices, source, dist, queue):
    """Fill ``dist`` from ``source``; ``queue`` ends up holding BFS order.

    Returns the number of reached nodes.
    """
    for i in range(dist.shape[0]):
        dist[i] = UNREACHED
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] == UNREACHED:
                dist[w] = du
                queue[tail] = w
                tail += 1
    return tail


@jit
def bfs(indptr, indices, source):
    n = indptr.shape[0] - 1
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    bfs_into(indptr, indices, source, dist, queue)
    return dist


@jit
def all_sources(indptr, indices):
    """Per-source distance sums, eccentricities and reach counts."""
    n = indptr.shape[0] - 1
    total = np.zeros(n, np.int64)
    ecc = np.zeros(n, np.int32)
    reached = np.zeros(n, np.int32)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for s in range(n):
        r = bfs_into(indptr, indices, s, dist, queue)
        reached[s] = r
        acc = 0
        for j in range(r):
            acc += dist[queue[j]]
        total[s] = acc
        ecc[s] = dist[queue[r - 1]]
    return total, ecc, reached


@jit
def distance_matrix(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.empty((n, n), np.int32)
    queue = np.empty(n, np.int32)
    for s in range(n):
        bfs_into(indptr, indices, s, out[s], queue)
    return out


@jit
def component_labels(indptr, indices):
    n = indptr.shape[0] - 1
    label = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    ncomp = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = ncomp
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if label[w] < 0:
                    label[w] = ncomp
                    queue[tail] = w
                    tail += 1
        ncomp += 1
    return label


@jit
def induced_eccentricity(indptr, indices, member, source, dist, queue):
    """BFS restricted to ``member``; returns (reached count, eccentricity)."""
    for i in range(dist.shape[0]):
        dist[i] = UNREACHED
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if member[w] and dist[w] == UNREACHED:
                dist[w] = du
                queue[tail] = w
                tail += 1
    return tail, dist[queue[tail - 1]]


@jit
def induced_diameter(indptr, indices, member):
    """Diameter of the subgraph induced by ``member``; -1 if disconnected."""
    n = indptr.shape[0] - 1
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    size = 0
    for i in range(n):
        if member[i]:
            size += 1
    best = 0
    for s in range(n):
        if not member[s]:
            continue
        r, e = induced_eccentricity(indptr, indices, member, s, dist, queue)
        if r != size:
            return -1
        if e > best:
            best = e
    return best


# ---------------------------------------------------------------------------
# convex hull closure
# ---------------------------------------------------------------------------

@jit
def _admit(indptr, indices, x, member, work, state, cnt):
    # state = [size, worklist length, boundary edge count]
    member[x] = 1
    work[state[1]] = x
    state[1] += 1
    state[0] += 1
    state[2] -= cnt[x]
    cnt[x] = 0
    for k in range(indptr[x], indptr[x + 1]):
        w = indices[k]
        if not member[w]:
            cnt[w] += 1
            state[2] += 1


@jit
def close_hull(indptr, indices, member, work, pos, state, cnt, dist, queue, onpath,
               cap):
    """Process the worklist from ``pos`` until the member set is convex.

    For each processed node ``u`` a BFS from ``u`` is followed by a backward
    sweep over the shortest-path DAG: a node lies on a geodesic from ``u`` to
    some member iff it is a member or has a DAG successor that does.  Returns
    the largest distance seen between a processed node and a member, which
    for a convex set is its diameter contribution.  Stops early once the set
    grows beyond ``cap`` nodes.
    """
    n = member.shape[0]
    diam = 0
    while pos < state[1] and state[0] <= cap:
        u = work[pos]
        pos += 1
        r = bfs_into(indptr, indices, u, dist, queue)
        for j in range(r - 1, -1, -1):
            x = queue[j]
            if member[x]:
                onpath[x] = 1
                if dist[x] > diam:
                    diam = dist[x]
                continue
            dx = dist[x] + 1
            flag = 0
            for k in range(indptr[x], indptr[x + 1]):
                y = indices[k]
                if dist[y] == dx and onpath[y]:
                    flag = 1
                    break
            onpath[x] = flag
        for j in range(r):
            x = queue[j]
            if onpath[x] and not member[x]:
                _admit(indptr, indices, x, member, work, state, cnt)
            onpath[x] = 0
        if state[0] == n and pos < state[1]:
            # the set is the whole graph; pending nodes only add their
            # eccentricity to the diameter
            while pos < state[1]:
                u = work[pos]
                pos += 1
                r = bfs_into(indptr, indices, u, dist, queue)
                e = dist[queue[r - 1]]
                if e > diam:
                    diam = e
    return diam


@jit
def convex_hull(indptr, indices, seeds):
    n = indptr.shape[0] - 1
    member = np.zeros(n, np.uint8)
    work = np.empty(n, np.int32)
    state = np.zeros(3, np.int64)
    cnt = np.zeros(n, np.int64)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    onpath = np.zeros(n, np.uint8)
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if not member[s]:
            _admit(indptr, indices, s, member, work, state, cnt)
    close_hull(indptr, indices, member, work, 0, state, cnt, dist, queue, onpath, n)
    return member


# ---------------------------------------------------------------------------
# expansion of convex subsets
# ---------------------------------------------------------------------------

@jit
def pick_boundary(member, cnt, boundary, u):
    """Outside node hit by a uniform boundary edge, driven by uniform ``u``."""
    r = int(u * boundary)
    if r >= boundary:
        r = boundary - 1
    for i in range(member.shape[0]):
        c = cnt[i]
        if c > 0 and not member[i]:
            if r < c:
                return i
            r -= c
    return -1


@jit
def expand_run(indptr, indices, seed, uniforms, max_steps, checkpoint,
               sizes, diams, snapshot):
    """One expansion run; fills ``sizes``/``diams`` and returns the last step."""
    n = indptr.shape[0] - 1
    member = np.zeros(n, np.uint8)
    work = np.empty(n, np.int32)
    state = np.zeros(3, np.int64)
    cnt = np.zeros(n, np.int64)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    onpath = np.zeros(n, np.uint8)

    _admit(indptr, indices, seed, member, work, state, cnt)
    pos = state[1]
    sizes[0] = 1
    diams[0] = 0
    diam = 0
    if checkpoint == 0:
        snapshot[:] = member
    t = 0
    while state[0] < n and t < max_steps:
        t += 1
        pick = pick_boundary(member, cnt, state[2], uniforms[t - 1])
        _admit(indptr, indices, pick, member, work, state, cnt)
        d = close_hull(indptr, indices, member, work, pos, state, cnt,
                       dist, queue, onpath, n)
        pos = state[1]
        if d > diam:
            diam = d
        sizes[t] = state[0]
        diams[t] = diam
        if t == checkpoint:
            snapshot[:] = member
    if t < checkpoint:
        snapshot[:] = member
    return t


# ---------------------------------------------------------------------------
# local statistics
# ---------------------------------------------------------------------------

@jit
def triangles(indptr, indices):
    """Triangles per node and the largest number of triangles on one edge."""
    n = indptr.shape[0] - 1
    acc = np.zeros(n, np.int64)
    mark = np.zeros(n, np.uint8)
    mu = 0
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            mark[indices[k]] = 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if v <= u:
                continue
            c = 0
            for k2 in range(indptr[v], indptr[v + 1]):
                if mark[indices[k2]]:
                    c += 1
            acc[u] += c
            acc[v] += c
            if c > mu:
                mu = c
        for k in range(indptr[u], indptr[u + 1]):
            mark[indices[k]] = 0
    return acc // 2, mu


@jit
def core_numbers(indptr, indices):
    """Batagelj-Zaversnik bucket algorithm."""
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    maxdeg = 0
    for i in range(n):
        deg[i] = indptr[i + 1] - indptr[i]
        if deg[i] > maxdeg:
            maxdeg = deg[i]
    bin_ = np.zeros(maxdeg + 1, np.int64)
    for i in range(n):
        bin_[deg[i]] += 1
    start = 0
    for d in range(maxdeg + 1):
        num = bin_[d]
        bin_[d] = start
        start += num
    pos = np.empty(n, np.int64)
    vert = np.empty(n, np.int64)
    for v in range(n):
        pos[v] = bin_[deg[v]]
        vert[pos[v]] = v
        bin_[deg[v]] += 1
    for d in range(maxdeg, 0, -1):
        bin_[d] = bin_[d - 1]
    bin_[0] = 0
    for i in range(n):
        v = vert[i]
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_[du] += 1
                deg[u] -= 1
    return deg


# ---------------------------------------------------------------------------
# graphlets on 2-4 nodes
# ---------------------------------------------------------------------------

@jit
def _has_edge(indptr, indices, a, b):
    lo = indptr[a]
    hi = indptr[a + 1]
    # neighbor lists are sorted; binary search
    while lo < hi:
        mid = (lo + hi) >> 1
        x = indices[mid]
        if x < b:
            lo = mid + 1
        elif x > b:
            hi = mid
        else:
            return True
    return False


@jit
def _pair_ok(indptr, indices, a, b, insub, stamp, token, has_inner):
    """Interval of a non-adjacent pair stays inside the instance.

    ``has_inner`` tells whether a and b share a neighbor inside the instance
    (induced distance 2); otherwise their induced distance is 3.
    """
    for k in range(indptr[b], indptr[b + 1]):
        stamp[indices[k]] = token
    if has_inner:
        for k in range(indptr[a], indptr[a + 1]):
            w = indices[k]
            if stamp[w] == token and not insub[w]:
                return False
        return True
    for k in range(indptr[a], indptr[a + 1]):
        p = indices[k]
        if stamp[p] == token:
            return False
        for k2 in range(indptr[p], indptr[p + 1]):
            q = indices[k2]
            if q != a and stamp[q] == token:
                if not (insub[p] and insub[q]):
                    return False
    return True


@jit
def classify_small(indptr, indices, nodes, k):
    """Graphlet class id of the connected instance ``nodes[:k]``."""
    if k == 2:
        return EDGE
    e = 0
    dmax = 0
    for i in range(k):
        d = 0
        for j in range(k):
            if i != j and _has_edge(indptr, indices, nodes[i], nodes[j]):
                d += 1
        e += d
        if d > dmax:
            dmax = d
    e //= 2
    if k == 3:
        return PATH3 if e == 2 else TRIANGLE
    if e == 3:
        return STAR if dmax == 3 else PATH4
    if e == 4:
        return PAW if dmax == 3 else CYCLE4
    if e == 5:
        return DIAMOND
    return CLIQUE4


@jit
def small_is_convex(indptr, indices, nodes, k, insub, stamp, token):
    """Convexity of a connected instance on at most four nodes.

    ``insub`` must flag exactly ``nodes[:k]``.  Returns (convex, next token).
    """
    for i in range(k):
        a = nodes[i]
        for j in range(i + 1, k):
            b = nodes[j]
            if _has_edge(indptr, indices, a, b):
                continue
            inner = False
            for h in range(k):
                c = nodes[h]
                if c != a and c != b and _has_edge(indptr, indices, a, c) \
                        and _has_edge(indptr, indices, c, b):
                    inner = True
                    break
            token += 1
            if not _pair_ok(indptr, indices, a, b, insub, stamp, token, inner):
                return False, token
    return True, token


@jit
def _record(indptr, indices, nodes, k, insub, stamp, token, g, c):
    for i in range(k):
        insub[nodes[i]] = 1
    cls = classify_small(indptr, indices, nodes, k)
    ok, token = small_is_convex(indptr, indices, nodes, k, insub, stamp, token)
    g[cls] += 1
    if ok:
        c[cls] += 1
    for i in range(k):
        insub[nodes[i]] = 0
    return token


@jit
def _block(indptr, indices, x, blocked, delta):
    blocked[x] += delta
    for k in range(indptr[x], indptr[x + 1]):
        blocked[indices[k]] += delta


@jit
def census_exact(indptr, indices, roots):
    """ESU enumeration of connected induced subgraphs on 2-4 nodes.

    Only subsets whose smallest node is in ``roots`` are enumerated, so
    disjoint root partitions can be processed independently and summed.
    """
    n = indptr.shape[0] - 1
    g = np.zeros(9, np.int64)
    c = np.zeros(9, np.int64)
    blocked = np.zeros(n, np.int32)
    insub = np.zeros(n, np.uint8)
    stamp = np.zeros(n, np.int64)
    token = 0
    ext1 = np.empty(n, np.int32)
    ext2 = np.empty(n, np.int32)
    ext3 = np.empty(n, np.int32)
    nodes = np.empty(4, np.int32)
    for ri in range(roots.shape[0]):
        v = roots[ri]
        nodes[0] = v
        _block(indptr, indices, v, blocked, 1)
        n1 = 0
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if u > v:
                ext1[n1] = u
                n1 += 1
        for i1 in range(n1):
            w1 = ext1[i1]
            nodes[1] = w1
            token = _record(indptr, indices, nodes, 2, insub, stamp, token, g, c)
            n2 = 0
            for j in range(i1 + 1, n1):
                ext2[n2] = ext1[j]
                n2 += 1
            for k in range(indptr[w1], indptr[w1 + 1]):
                u = indices[k]
                if u > v and blocked[u] == 0:
                    ext2[n2] = u
                    n2 += 1
            _block(indptr, indices, w1, blocked, 1)
            for i2 in range(n2):
                w2 = ext2[i2]
                nodes[2] = w2
                token = _record(indptr, indices, nodes, 3, insub, stamp, token, g, c)
                n3 = 0
                for j in range(i2 + 1, n2):
                    ext3[n3] = ext2[j]
                    n3 += 1
                for k in range(indptr[w2], indptr[w2 + 1]):
                    u = indices[k]
                    if u > v and blocked[u] == 0:
                        ext3[n3] = u
                        n3 += 1
                for i3 in range(n3):
                    nodes[3] = ext3[i3]
                    token = _record(indptr, indices, nodes, 4, insub, stamp,
                                    token, g, c)
            _block(indptr, indices, w1, blocked, -1)
        _block(indptr, indices, v, blocked, -1)
    return g, c


@jit
def _boundary_size(indptr, indices, nodes, mask, stamp, token):
    # nodes selected by bit mask over nodes[:4]
    cnt = 0
    for i in range(4):
        if mask & (1 << i):
            stamp[nodes[i]] = token
    for i in range(4):
        if mask & (1 << i):
            a = nodes[i]
            for k in range(indptr[a], indptr[a + 1]):
                w = indices[k]
                if stamp[w] != token:
                    stamp[w] = token
                    cnt += 1
    return cnt


@jit
def census_sampled(indptr, indices, k, uniforms):
    """Importance-weighted sampling of connected ``k``-node instances.

    Each sample grows a subset from a uniform node by repeatedly adding a
    uniform boundary node.  The exact probability ``pi`` of producing the
    final subset (summed over all growth orders) is computed, and the sample
    carries weight ``1/pi``, so weighted class indicators are unbiased for the
    induced and convex counts.  Returns per-sample (class, convex, weight).
    """
    n = indptr.shape[0] - 1
    samples = uniforms.shape[0]
    cls_out = np.empty(samples, np.int32)
    conv_out = np.empty(samples, np.uint8)
    w_out = np.empty(samples, np.float64)
    stamp = np.zeros(n, np.int64)
    insub = np.zeros(n, np.uint8)
    token = 0
    nodes = np.empty(4, np.int32)
    cand = np.empty(n, np.int32)
    bsize = np.zeros(16, np.float64)
    for s in range(samples):
        v = int(uniforms[s, 0] * n)
        if v >= n:
            v = n - 1
        nodes[0] = v
        for j in range(1, k):
            token += 1
            for i in range(j):
                stamp[nodes[i]] = token
            nc = 0
            for i in range(j):
                a = nodes[i]
                for kk in range(indptr[a], indptr[a + 1]):
                    w = indices[kk]
                    if stamp[w] != token:
                        stamp[w] = token
                        cand[nc] = w
                        nc += 1
            r = int(uniforms[s, j] * nc)
            if r >= nc:
                r = nc - 1
            nodes[j] = cand[r]
        # boundary sizes of every proper subset of the instance
        full = (1 << k) - 1
        for mask in range(1, full):
            token += 1
            bsize[mask] = _boundary_size(indptr, indices, nodes, mask, stamp, token)
        # sum growth-order probabilities over all orders of k nodes
        pi = 0.0
        if k == 3:
            for a in range(3):
                for b in range(3):
                    if b == a:
                        continue
                    c3 = 3 - a - b
                    if not _has_edge(indptr, indices, nodes[a], nodes[b]):
                        continue
                    if not (_has_edge(indptr, indices, nodes[c3], nodes[a]) or
                            _has_edge(indptr, indices, nodes[c3], nodes[b])):
                        continue
                    m1 = 1 << a
                    m2 = m1 | (1 << b)
                    pi += 1.0 / (bsize[m1] * bsize[m2])
        else:
            for a in range(4):
                for b in range(4):
                    if b == a or not _has_edge(indptr, indices, nodes[a], nodes[b]):
                        continue
                    for c4 in range(4):
                        if c4 == a or c4 == b:
                            continue
                        if not (_has_edge(indptr, indices, nodes[c4], nodes[a]) or
                                _has_edge(indptr, indices, nodes[c4], nodes[b])):
                            continue
                        d4 = 6 - a - b - c4
                        if not (_has_edge(indptr, indices, nodes[d4], nodes[a]) or
                                _has_edge(indptr, indices, nodes[d4], nodes[b]) or
                                _has_edge(indptr, indices, nodes[d4], nodes[c4])):
                            continue
                        m1 = 1 << a
                        m2 = m1 | (1 << b)
                        m3 = m2 | (1 << c4)
                        pi += 1.0 / (bsize[m1] * bsize[m2] * bsize[m3])
        pi /= n
        for i in range(k):
            insub[nodes[i]] = 1
        cls_out[s] = classify_small(indptr, indices, nodes, k)
        ok, token = small_is_convex(indptr, indices, nodes, k, insub, stamp, token)
        conv_out[s] = 1 if ok else 0
        for i in range(k):
            insub[nodes[i]] = 0
        w_out[s] = 1.0 / pi
    return cls_out, conv_out, w_out


# ---------------------------------------------------------------------------
# random subsets
# ---------------------------------------------------------------------------

@jit
def subsets_connected_convex(indptr, indices, rows):
    """For each candidate row of distinct nodes: induced-connected, convex flags."""
    n = indptr.shape[0] - 1
    b = rows.shape[0]
    k = rows.shape[1]
    connected = np.zeros(b, np.uint8)
    convex = np.zeros(b, np.uint8)
    seen = np.zeros(k, np.uint8)
    stack = np.empty(k, np.int64)
    member = np.zeros(n, np.uint8)
    work = np.empty(n, np.int32)
    state = np.zeros(3, np.int64)
    cnt = np.zeros(n, np.int64)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    onpath = np.zeros(n, np.uint8)
    for r in range(b):
        for i in range(k):
            seen[i] = 0
        seen[0] = 1
        stack[0] = 0
        top = 1
        found = 1
        while top > 0:
            top -= 1
            i = stack[top]
            for j in range(k):
                if not seen[j] and _has_edge(indptr, indices, rows[r, i], rows[r, j]):
                    seen[j] = 1
                    stack[top] = j
                    top += 1
                    found += 1
        if found != k:
            continue
        connected[r] = 1
        state[0] = 0
        state[1] = 0
        state[2] = 0
        for i in range(k):
            _admit(indptr, indices, rows[r, i], member, work, state, cnt)
        close_hull(indptr, indices, member, work, 0, state, cnt, dist, queue, onpath, k)
        if state[0] == k:
            convex[r] = 1
        for i in range(state[1]):
            x = work[i]
            member[x] = 0
            for kk in range(indptr[x], indptr[x + 1]):
                cnt[indices[kk]] = 0
    return connected, convex


# ---------------------------------------------------------------------------
# randomization
# ---------------------------------------------------------------------------

@jit
def _slot(indptr, adj, a, b):
    for k in range(indptr[a], indptr[a + 1]):
        if adj[k] == b:
            return k
    return -1


@jit
def _linked(indptr, adj, a, b):
    if indptr[a + 1] - indptr[a] > indptr[b + 1] - indptr[b]:
        a, b = b, a
    for k in range(indptr[a], indptr[a + 1]):
        if adj[k] == b:
            return True
    return False


@jit
def _reaches(nbr_ptr, nbr, deg, x, y, vis, qa, qb, token):
    """Alternating two-sided BFS; True iff ``x`` and ``y`` are connected.

    ``nbr_ptr``/``nbr``/``deg`` describe slot-based adjacency: the neighbors of
    ``v`` are ``nbr[nbr_ptr[v] : nbr_ptr[v] + deg[v]]``.  ``vis`` holds
    ``token`` for x's side and ``token + 1`` for y's side.
    """
    if x == y:
        return True
    ta = token
    tb = token + 1
    vis[x] = ta
    vis[y] = tb
    qa[0] = x
    qb[0] = y
    ha = 0
    ea = 1
    hb = 0
    eb = 1
    while ha < ea and hb < eb:
        # expand the side with the smaller frontier by one node
        if ea - ha <= eb - hb:
            u = qa[ha]
            ha += 1
            for k in range(nbr_ptr[u], nbr_ptr[u] + deg[u]):
                w = nbr[k]
                if vis[w] == tb:
                    return True
                if vis[w] != ta:
                    vis[w] = ta
                    qa[ea] = w
                    ea += 1
        else:
            u = qb[hb]
            hb += 1
            for k in range(nbr_ptr[u], nbr_ptr[u] + deg[u]):
                w = nbr[k]
                if vis[w] == ta:
                    return True
                if vis[w] != tb:
                    vis[w] = tb
                    qb[eb] = w
                    eb += 1
    return False


@jit
def double_edge_swaps(indptr, adj, edges, pick_a, pick_b, flips):
    """Connectivity-preserving double-edge swaps, in place on ``adj``/``edges``.

    ``adj`` is a mutable copy of the CSR ``indices``; degrees never change so
    every node keeps its slot range.  Returns the number of accepted swaps.
    """
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    for i in range(n):
        deg[i] = indptr[i + 1] - indptr[i]
    vis = np.zeros(n, np.int64)
    qa = np.empty(n, np.int64)
    qb = np.empty(n, np.int64)
    token = 1
    accepted = 0
    for s in range(pick_a.shape[0]):
        i = pick_a[s]
        j = pick_b[s]
        if i == j:
            continue
        a = edges[i, 0]
        b = edges[i, 1]
        c = edges[j, 0]
        d = edges[j, 1]
        if flips[s] & 1:
            a, b = b, a
        if flips[s] & 2:
            c, d = d, c
        # (a,b),(c,d) -> (a,d),(c,b)
        if a == c or b == d or a == d or c == b:
            continue
        if _linked(indptr, adj, a, d) or _linked(indptr, adj, c, b):
            continue
        sa = _slot(indptr, adj, a, b)
        sb = _slot(indptr, adj, b, a)
        sc = _slot(indptr, adj, c, d)
        sd = _slot(indptr, adj, d, c)
        adj[sa] = d
        adj[sb] = c
        adj[sc] = b
        adj[sd] = a
        token += 2
        # a reaches b  =>  d (adjacent to a) and c (adjacent to b) join them
        if _reaches(indptr, adj, deg, a, b, vis, qa, qb, token):
            edges[i, 0] = a
            edges[i, 1] = d
            edges[j, 0] = c
            edges[j, 1] = b
            accepted += 1
        else:
            adj[sa] = b
            adj[sb] = a
            adj[sc] = d
            adj[sd] = c
    return accepted


@jit
def _drop_slot(ptr, nbr, deg, a, b):
    base = ptr[a]
    last = base + deg[a] - 1
    for k in range(base, last + 1):
        if nbr[k] == b:
            nbr[k] = nbr[last]
            deg[a] -= 1
            return


@jit
def edge_walk(ptr, nbr, deg, cap, edges, pick_e, pick_x, pick_y, start):
    """Edge-relocation walk on connected simple graphs with fixed n and m.

    Removes a uniform edge and inserts a uniform node pair when that pair is
    not already an edge and the graph stays connected.  The proposal is
    symmetric, so the walk is uniform over connected G(n, m) in the limit.
    Stops early (returning the step index) when a node would exceed ``cap``
    slots; returns the total step count otherwise.
    """
    n = deg.shape[0]
    vis = np.zeros(n, np.int64)
    qa = np.empty(n, np.int64)
    qb = np.empty(n, np.int64)
    token = 1
    for s in range(start, pick_e.shape[0]):
        x = pick_x[s]
        y = pick_y[s]
        if x == y:
            continue
        if deg[x] > deg[y]:
            lx, ly = y, x
        else:
            lx, ly = x, y
        present = False
        for k in range(ptr[lx], ptr[lx] + deg[lx]):
            if nbr[k] == ly:
                present = True
                break
        if present:
            continue
        if deg[x] >= cap or deg[y] >= cap:
            return s
        e = pick_e[s]
        u = edges[e, 0]
        v = edges[e, 1]
        _drop_slot(ptr, nbr, deg, u, v)
        _drop_slot(ptr, nbr, deg, v, u)
        nbr[ptr[x] + deg[x]] = y
        deg[x] += 1
        nbr[ptr[y] + deg[y]] = x
        deg[y] += 1
        token += 2
        if _reaches(ptr, nbr, deg, u, v, vis, qa, qb, token):
            edges[e, 0] = x
            edges[e, 1] = y
        else:
            _drop_slot(ptr, nbr, deg, x, y)
            _drop_slot(ptr, nbr, deg, y, x)
            nbr[ptr[u] + deg[u]] = v
            deg[u] += 1
            nbr[ptr[v] + deg[v]] = u
            deg[v] += 1
    return pick_e.shape[0]
