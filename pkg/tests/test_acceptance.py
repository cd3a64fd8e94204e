"""Acceptance criteria, one test per criterion.

Each test prints a single ``C<k> PASS|FAIL|SKIP`` line (also collected into the
pytest terminal summary).  Run directly with ``python3 tests/test_acceptance.py``
to get only the lines.  Set ``CONVEXITY_DATASETS`` to a directory of edge lists
to enable criterion 8.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from convexity import (  # noqa: E402
    ExpansionConfig,
    aggregate_curves,
    census,
    convex_hull,
    expand_ensemble,
    graph_stats,
    is_convex,
    k_core,
    max_convex_size,
    mean_x_convexity,
    x_convexity,
)
from convexity.cli import main as cli_main  # noqa: E402
from convexity.graph import is_connected  # noqa: E402
from convexity.measures import detect_c_core, x1_closed_form  # noqa: E402
from convexity.random_models import (  # noqa: E402
    er_connected_walk,
    gen_er_connected,
    gen_gnp_connected,
    local_convexity_threshold,
    prior_graphlet_convexity,
    rewire_preserving_degrees,
)
from convexity.report import read_csv_table, read_graph  # noqa: E402

from oracles import (  # noqa: E402
    adjacency,
    census_bruteforce,
    closed_masks,
    complete_graph,
    core_by_pruning,
    induced_connected,
    interval_masks,
    mask_nodes,
    random_connected_graph,
    random_tree,
)

# name, n, m, <k>, <C>, <l>, X_1, ln n / ln <k>, overall prior (%)
NETWORKS = [
    ("power_grid", 4941, 6594, 2.67, 0.08, 18.99, 0.95, 8.66, 99.4),
    ("highways", 1039, 1305, 2.51, 0.02, 18.40, 0.66, 7.54, 97.6),
    ("coauthorships", 379, 914, 4.82, 0.74, 6.04, 0.91, 3.77, 71.3),
    ("internet", 767, 1734, 4.52, 0.29, 3.03, 0.68, 4.40, 86.4),
    ("c_elegans", 3747, 7762, 4.14, 0.06, 4.32, 0.57, 5.79, 97.6),
    ("airports", 1572, 17214, 21.90, 0.50, 3.12, 0.43, 2.38, 12.9),
    ("citations", 1878, 5412, 5.76, 0.13, 5.52, 0.24, 4.30, 89.2),
    ("weblogs", 1222, 16714, 27.36, 0.32, 2.74, 0.17, 2.15, 6.0),
    ("little_rock", 183, 2434, 26.60, 0.32, 2.15, 0.03, 1.59, 0.3),
]

_TRACES: dict[str, list] = {}


def report(tag, ok, text, seconds=None):
    try:
        from conftest import ACCEPTANCE_LINES
    except ImportError:
        ACCEPTANCE_LINES = []
    status = "SKIP" if ok is None else ("PASS" if bool(ok) else "FAIL")
    line = f"{tag} {status}  {text}"
    if seconds is not None:
        line += f"  [{seconds:.2f} s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    """Load or compile every kernel once so criteria time steady-state work."""
    rng = np.random.default_rng(0)
    g = gen_er_connected(30, 60, rng)
    expand_ensemble(g, ExpansionConfig(runs=2))
    census(g)
    graph_stats(g)
    k_core(g)
    convex_hull(g, [0, 5])
    is_convex(g, [0])
    rewire_preserving_degrees(g, rng)
    er_connected_walk(30, 60, rng)
    census(g, "sampled", 10, rng)


# ---------------------------------------------------------------------------

def test_c1_reference_priors():
    tmp = Path(tempfile.mkdtemp())
    worst_l = worst_p = 0.0
    start = time.perf_counter()
    for name, n, _, k, *_rest, lnratio, pct in NETWORKS:
        out = tmp / name
        with contextlib.redirect_stdout(io.StringIO()):
            code = cli_main(["priors", "--n", str(n), "--k", str(k), "--out", str(out)])
        assert code == 0
        _, t = read_csv_table(out / "priors.csv")
        row = dict(zip(t.columns, t.rows[0]))
        worst_l = max(worst_l, abs(row["local_threshold"] - lnratio))
        worst_p = max(worst_p, abs(row["P_prior_percent"] - pct))
    elapsed = time.perf_counter() - start
    ok = worst_l <= 0.01 and worst_p <= 0.5 and elapsed < 1.0
    line = report("C1", ok, f"reference priors: max |ln n/ln k err| {worst_l:.4f} (tol 0.01), "
                  f"max |P err| {worst_p:.3f} pp (tol 0.5), 9 rows < 1 s", elapsed)
    assert ok, line


def test_c2_convex_graph_identity():
    rng = np.random.default_rng(169)
    graphs = {"tree169": random_tree(rng, 169), "K50": complete_graph(50)}
    start = time.perf_counter()
    problems = []
    for name, g in graphs.items():
        traces, _ = expand_ensemble(g, ExpansionConfig(runs=100, rng_seed=21))
        _TRACES[name] = traces
        for tr in traces:
            if not (tr.sizes == np.arange(1, g.n + 1)).all():
                problems.append(f"{name}: s(t) != (t+1)/n")
                break
        for c in (1, 1.1):
            vals = {x_convexity(tr, c) for tr in traces}
            if vals != {1.0}:
                problems.append(f"{name}: X_{c} values {sorted(vals)[:3]}")
        L1 = max_convex_size(aggregate_curves(traces), "strict")
        if L1 != g.n:
            problems.append(f"{name}: L_1 = {L1}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 5.0
    line = report("C2", ok, "tree n=169 and K_50, 100 runs each: s(t)=(t+1)/n, X_1=X_1.1=1.0, "
                  f"L_1=n{'; ' + '; '.join(problems) if problems else ''}", elapsed)
    assert ok, line


def test_c3_random_graph_phase():
    n, k = 1000, 5.0
    m = int(n * k / 2)
    start = time.perf_counter()
    g = gen_er_connected(n, m, np.random.default_rng(1000))
    traces, _ = expand_ensemble(g, ExpansionConfig(runs=100, rng_seed=31))
    _TRACES["er1000"] = traces
    curve = aggregate_curves(traces)
    elapsed = time.perf_counter() - start
    ratio = local_convexity_threshold(n, k)

    t_max = math.floor(ratio) - 1
    below = [t for t in range(t_max + 1) if curve.mean[t] < 2 * t / n]
    part_a = len(below) == t_max + 1
    over = np.flatnonzero(curve.mean > 0.9)
    first = int(over[0]) if over.size else None
    part_b = first is not None and first <= ratio + 4
    L1 = max_convex_size(curve, "strict")
    part_c = 3 <= L1 <= 6
    ok = part_a and part_b and part_c and elapsed < 60
    detail = ", ".join(f"{curve.mean[t] * n:.2f}" for t in range(t_max + 1))
    line = report(
        "C3", ok,
        f"ER(1000, <k>=5), 100 runs: (a) mean s(t) < 2t/n for t<={t_max}: "
        f"{'yes' if part_a else 'no'} (n*s = {detail} vs 2t = "
        f"{', '.join(str(2 * t) for t in range(t_max + 1))}); "
        f"(b) s>0.9 at t={first} <= {ratio + 4:.2f}: {'yes' if part_b else 'no'}; "
        f"(c) L~_1={L1} in [3,6]: {'yes' if part_c else 'no'}", elapsed)
    assert ok, line


def _per_class_z(graphs_g, graphs_c, prior):
    g = graphs_g.sum(axis=0)
    c = graphs_c.sum(axis=0)
    runs = graphs_g.shape[0]
    with np.errstate(invalid="ignore", divide="ignore"):
        p_hat = c / g
        resid = graphs_c - p_hat * graphs_g
        se = np.sqrt((resid**2).sum(axis=0) * runs / (runs - 1)) / g
        z = (p_hat - prior) / se
    return g, p_hat, se, z


def test_c4_prior_monte_carlo():
    n, p, runs = 60, 0.08, 200
    rng = np.random.default_rng(60)
    start = time.perf_counter()
    gs, cs = [], []
    for _ in range(runs):
        cen = census(gen_gnp_connected(n, p, rng))
        gs.append(cen.g)
        cs.append(cen.c)
    elapsed = time.perf_counter() - start
    gs = np.array(gs, float)
    cs = np.array(cs, float)
    prior = prior_graphlet_convexity(n, p)
    g, p_hat, se, z = _per_class_z(gs, cs, prior)
    tested = [i for i in range(9) if g[i] >= 30 and i not in (0, 2, 8)]
    failed = [i for i in tested if not abs(p_hat[i] - prior[i]) <= 3 * se[i]]
    exact = prior_graphlet_convexity(n, p, "exact")
    z_exact = (p_hat[3] - exact[3]) / se[3]
    ok = not failed and elapsed < 120
    zs = " ".join(f"G{i}:{z[i]:+.1f}" for i in tested)
    line = report("C4", ok, f"G(60,0.08), {runs} connected graphs, z vs prior (between-graph SE): "
                  f"{zs} (G0, G2, G8 convex by construction); outside 3 SE: {['G%d' % i for i in failed] or 'none'}"
                  f" [path prior exact form z={z_exact:+.1f}]", elapsed)
    assert ok, line


def test_c5_bruteforce_oracles():
    rng = np.random.default_rng(5)
    start = time.perf_counter()
    bad = {"convex": 0, "hull": 0, "census": 0, "core": 0}
    for _ in range(200):
        g = random_connected_graph(rng, 2, 10)
        adj = adjacency(g)
        closed = closed_masks(g.n, interval_masks(adj))
        masks = np.arange(1 << g.n, dtype=np.int64)
        sizes = np.array([bin(int(x)).count("1") for x in masks])
        for mask in range(1, 1 << g.n):
            nodes = mask_nodes(mask)
            if induced_connected(adj, nodes) and is_convex(g, nodes) != bool(closed[mask]):
                bad["convex"] += 1
            supers = closed & ((masks & mask) == mask)
            best = np.flatnonzero(supers & (sizes == sizes[supers].min()))
            hull = convex_hull(g, nodes)
            if best.shape[0] != 1 or set(mask_nodes(int(best[0]))) != hull:
                bad["hull"] += 1
        gc, cc = census_bruteforce(g)
        cen = census(g)
        bad["census"] += int(not ((cen.g == gc).all() and (cen.c == cc).all()))
        bad["core"] += int(not (k_core(g) == core_by_pruning(g)).all())
    elapsed = time.perf_counter() - start
    ok = not any(bad.values()) and elapsed < 60
    line = report("C5", ok, "200 random connected graphs (n<=10): mismatches "
                  + ", ".join(f"{k}={v}" for k, v in bad.items()), elapsed)
    assert ok, line


def test_c6_telescoping_identity():
    if not _TRACES:
        test_c2_convex_graph_identity()
        test_c3_random_graph_phase()
    worst = 0.0
    count = 0
    for traces in _TRACES.values():
        for tr in traces:
            if tr.covered_at is None:
                continue
            worst = max(worst, abs(x_convexity(tr, 1) - x1_closed_form(tr)))
            count += 1
    ok = count > 0 and worst <= 1e-12
    line = report("C6", ok, f"X_1 sum vs (t'+1)/n on {count} traces from C2-C3: "
                  f"max |diff| {worst:.2e} (tol 1e-12)")
    assert ok, line


def _simple(g):
    e = g.edges()
    return (e[:, 0] < e[:, 1]).all() and np.unique(e, axis=0).shape[0] == e.shape[0]


def test_c7_null_model_contracts():
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    problems = []
    rewired = 0
    generated = 0
    infeasible = []
    for name, n, m, *_ in NETWORKS:
        base = er_connected_walk(n, m, rng)
        h = rewire_preserving_degrees(base, rng)
        rewired += 1
        if not ((np.sort(h.degrees) == np.sort(base.degrees)).all()
                and (h.degrees == base.degrees).all() and _simple(h)
                and is_connected(h) and h.m == m):
            problems.append(f"rewire {name}")
        # rejection is only practical when a connected draw is not vanishingly rare
        k = 2 * m / n
        if n * math.exp(-k) > 20:
            infeasible.append(name)
            continue
        g = gen_er_connected(n, m, rng)
        generated += 1
        if not (g.n == n and g.m == m and _simple(g) and is_connected(g)):
            problems.append(f"er {name}")
    for _ in range(300):
        n = int(rng.integers(2, 40))
        m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
        g = gen_er_connected(n, m, rng)
        generated += 1
        if not (g.m == m and _simple(g) and is_connected(g)):
            problems.append(f"er ({n},{m})")
            break
    elapsed = time.perf_counter() - start
    ok = not problems
    line = report("C7", ok, f"rewire 10m steps on {rewired} reference-sized graphs and "
                  f"{generated} gen_er_connected draws (rejection impractical, not drawn: "
                  f"{', '.join(infeasible)}): violations {problems or 'none'}", elapsed)
    assert ok, line


def _dataset_path(root, name):
    for suffix, fmt in ((".txt", "edgelist"), (".csv", "edgelist"), (".edges", "edgelist"),
                        (".net", "pajek-arcs")):
        p = root / f"{name}{suffix}"
        if p.exists():
            return p, fmt
    return None, None


def test_c8_datasets():
    root = os.environ.get("CONVEXITY_DATASETS")
    if not root:
        report("C8", None, "dataset-dependent; set CONVEXITY_DATASETS to run")
        pytest.skip("CONVEXITY_DATASETS not set")
    root = Path(root)
    start = time.perf_counter()
    problems = []
    seen = []
    for name, n, m, k, C, ell, x1, *_ in NETWORKS:
        path, fmt = _dataset_path(root, name)
        if path is None:
            continue
        seen.append(name)
        g, _ = read_graph(path, fmt)
        st = graph_stats(g)
        if (st.n, st.m) != (n, m) or abs(st.avg_degree - k) > 0.01 \
                or abs(st.avg_clustering - C) > 0.01 or abs(st.avg_geodesic - ell) > 0.01:
            problems.append(f"{name} stats ({st.n}, {st.m}, {st.avg_degree:.2f}, "
                            f"{st.avg_clustering:.2f}, {st.avg_geodesic:.2f})")
        traces, freq = expand_ensemble(g, ExpansionConfig(runs=100, rng_seed=8))
        got = mean_x_convexity(traces, 1)
        if abs(got - x1) > 0.05:
            problems.append(f"{name} X_1={got:.3f}")
        if name == "c_elegans":
            core = detect_c_core(freq).core
            two = set(np.flatnonzero(k_core(g) >= 2).tolist())
            share = len(core & two) / len(two)
            if share < 0.8:
                problems.append(f"c-core holds {share:.0%} of the 2-core")
    elapsed = time.perf_counter() - start
    if not seen:
        report("C8", None, f"no dataset files found in {root}")
        pytest.skip("no dataset files")
    ok = not problems
    line = report("C8", ok, f"datasets {', '.join(seen)}: {problems or 'all within tolerance'}",
                  elapsed)
    assert ok, line


if __name__ == "__main__":
    tests = [test_c1_reference_priors, test_c2_convex_graph_identity, test_c3_random_graph_phase,
             test_c4_prior_monte_carlo, test_c5_bruteforce_oracles,
             test_c6_telescoping_identity, test_c7_null_model_contracts, test_c8_datasets]
    warm_up.__wrapped__()
    failures = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failures += 1
        except pytest.skip.Exception:
            pass
    sys.exit(1 if failures else 0)
