import itertools
import math

import numpy as np
import pytest

from convexity import (
    build_graph,
    census,
    expansion_threshold,
    expected_graphlet_counts,
    gen_er_connected,
    local_convexity_threshold,
    prior_graphlet_convexity,
    prior_overall,
    rewire_preserving_degrees,
    sample_connected_induced,
)
from convexity.graph import is_connected
from convexity.graphlets import classify
from convexity.random_models import (
    _decode_pairs,
    er_connected_walk,
    gen_gnp_connected,
    priors,
)

from oracles import complete_graph, cycle, path, random_tree


def _simple(g):
    e = g.edges()
    return (e[:, 0] != e[:, 1]).all() and np.unique(e, axis=0).shape[0] == e.shape[0]


# --- generators --------------------------------------------------------------

def test_pair_decoding():
    for n in (2, 3, 9, 40):
        expected = np.array(list(itertools.combinations(range(n), 2)))
        assert (_decode_pairs(np.arange(expected.shape[0]), n) == expected).all()
    n = 200_000
    top = n * (n - 1) // 2 - 1
    assert _decode_pairs([top], n).tolist() == [[n - 2, n - 1]]


def test_er_tree_budget(rng):
    g = gen_er_connected(10, 9, rng)
    assert g.m == 9 and is_connected(g)


def test_er_full_budget(rng):
    g = gen_er_connected(5, 10, rng)
    assert g.m == 10 and (g.degrees == 4).all()


def test_er_conservation(rng):
    g = gen_er_connected(1000, 2500, rng)
    assert g.n == 1000 and g.m == 2500
    assert int(g.degrees.sum()) == 5000
    assert is_connected(g) and _simple(g)


def test_er_bounds(rng):
    with pytest.raises(ValueError):
        gen_er_connected(10, 8, rng)
    with pytest.raises(ValueError):
        gen_er_connected(5, 11, rng)


def test_er_rejection_cap(rng):
    with pytest.raises(RuntimeError, match="connectivity rejection cap"):
        gen_er_connected(2000, 2000, rng, max_attempts=3)


def test_er_degree_mean(rng):
    n, m = 60, 150
    degs = np.concatenate([gen_er_connected(n, m, rng).degrees for _ in range(200)])
    assert degs.mean() == pytest.approx(2 * m / n)


def test_er_uniform_over_small_space():
    # connected graphs on 4 labeled nodes with 3 edges: the 16 spanning trees
    rng = np.random.default_rng(0)
    counts = {}
    draws = 16_000
    for _ in range(draws):
        key = tuple(map(tuple, gen_er_connected(4, 3, rng).edges().tolist()))
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 16
    exp = draws / 16
    chi2 = sum((c - exp) ** 2 / exp for c in counts.values())
    assert chi2 < 37.7  # 99.9% quantile, 15 degrees of freedom


def test_gnp_connected(rng):
    for _ in range(20):
        g = gen_gnp_connected(40, 0.15, rng)
        assert g.n == 40 and is_connected(g)


def test_walk_generator(rng):
    for n, m in [(50, 49), (300, 400), (1039, 1305)]:
        g = er_connected_walk(n, m, rng)
        assert g.n == n and g.m == m
        assert is_connected(g) and _simple(g)


def test_walk_grows_slot_capacity(rng):
    # a star start forces a hub far above the initial slot budget
    g = er_connected_walk(200, 5000, rng, steps=20_000)
    assert g.m == 5000 and is_connected(g) and _simple(g)


def test_rewire_triangle_unchanged(rng):
    g = complete_graph(3)
    h, accepted = rewire_preserving_degrees(g, rng, return_accepted=True)
    assert accepted == 0
    assert (h.edges() == g.edges()).all()


def test_rewire_path_stays_path(rng):
    g = path(4)
    for seed in range(20):
        h = rewire_preserving_degrees(g, np.random.default_rng(seed), steps=50)
        assert sorted(h.degrees) == [1, 1, 2, 2]
        assert is_connected(h) and h.m == 3


def test_rewire_contract(rng):
    for n, m in [(100, 150), (500, 1500), (1000, 2500)]:
        g = gen_er_connected(n, m, rng)
        h, accepted = rewire_preserving_degrees(g, rng, return_accepted=True)
        assert accepted > 0
        assert (h.degrees == g.degrees).all()
        assert is_connected(h) and _simple(h)
        assert not (h.edges().shape == g.edges().shape and (h.edges() == g.edges()).all())


def test_rewire_keeps_labels():
    g = build_graph([(10, 11), (11, 12), (12, 13), (13, 10), (10, 12)])
    h = rewire_preserving_degrees(g, np.random.default_rng(1))
    assert list(h.labels) == [10, 11, 12, 13]


# --- analytic baselines -------------------------------------------------------

def test_prior_limits():
    pr = prior_graphlet_convexity(1000, 1e-9)
    assert np.allclose(pr, 1.0)
    for n, p in [(5, 0.5), (100, 0.05), (4000, 0.3)]:
        pr = prior_graphlet_convexity(n, p)
        assert pr[0] == pr[2] == pr[8] == 1.0
        assert ((pr >= 0) & (pr <= 1)).all()
        ex = prior_graphlet_convexity(n, p, "exact")
        assert ((ex >= 0) & (ex <= 1)).all()


def test_prior_p1_example():
    assert prior_graphlet_convexity(100, 0.05)[1] == pytest.approx((1 - 0.0025) ** 97)
    assert prior_graphlet_convexity(100, 0.05)[1] == pytest.approx(0.7844, abs=1e-4)


def test_prior_errors():
    with pytest.raises(ValueError):
        prior_graphlet_convexity(100, 0.0)
    with pytest.raises(ValueError):
        prior_graphlet_convexity(100, 1.0)
    with pytest.raises(ValueError):
        prior_graphlet_convexity(4, 0.5)
    with pytest.raises(ValueError):
        prior_graphlet_convexity(50, 0.1, "mean-field")


def _single_outside_node_probability(cls, p):
    """Probability that one extra node keeps an instance convex, by enumeration.

    With five nodes the only possible detours run through the extra node, so
    the prior equals this probability for n = 5.
    """
    reps = {1: [(0, 1), (1, 2)], 3: [(0, 1), (1, 2), (2, 3)], 4: [(0, 1), (0, 2), (0, 3)],
            5: [(0, 1), (1, 2), (2, 3), (3, 0)], 6: [(0, 1), (1, 2), (2, 0), (2, 3)],
            7: [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]}
    edges = reps[cls]
    k = max(max(e) for e in edges) + 1
    x = k
    total = 0.0
    from convexity import is_convex
    for r in range(k + 1):
        for nb in itertools.combinations(range(k), r):
            g = build_graph(edges + [(x, y) for y in nb] + ([] if nb else [(x, x)]))
            prob = p**r * (1 - p) ** (k - r)
            if not nb:
                total += prob
                continue
            total += prob * is_convex(g, range(k))
    return total


@pytest.mark.parametrize("cls", [1, 4, 5, 6, 7])
def test_prior_per_node_factor(cls):
    for p in (0.1, 0.3, 0.7):
        single = _single_outside_node_probability(cls, p)
        n = 4 if cls == 1 else 5
        got = prior_graphlet_convexity(max(n, 5), p)[cls]
        expect = single ** (1 if cls != 1 else 2)
        assert got == pytest.approx(expect, rel=1e-12)


def test_path_prior_exact_small_n():
    # n = 5: one outside node, detours of length three need two outside nodes
    for p in (0.1, 0.4):
        single = _single_outside_node_probability(3, p)
        assert prior_graphlet_convexity(5, p, "exact")[3] == pytest.approx(single)


def test_expected_counts():
    assert expected_graphlet_counts(6, 0.5)[2] == pytest.approx(2.5)
    full = expected_graphlet_counts(9, 1.0)
    assert full[8] == math.comb(9, 4)
    assert full[0] == math.comb(9, 2) and full[2] == math.comb(9, 3)
    assert (full[[1, 3, 4, 5, 6, 7]] == 0).all()


def test_expected_counts_monte_carlo():
    rng = np.random.default_rng(2)
    n, p, draws = 6, 0.5, 4000
    rows = []
    for _ in range(draws):
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        # self-loops keep isolated nodes in the graph and are then dropped
        edges += [(u, u) for u in range(n)]
        rows.append(census(build_graph(edges)).g)
    rows = np.array(rows, float)
    se = rows.std(axis=0, ddof=1) / math.sqrt(draws)
    exp = expected_graphlet_counts(n, p)
    assert (np.abs(rows.mean(axis=0) - exp) < 4 * se).all()


def test_prior_overall_table():
    assert 100 * prior_overall(183, 26.60) == pytest.approx(0.3, abs=0.5)
    assert 100 * prior_overall(4941, 2.67) == pytest.approx(99.4, abs=0.5)
    assert 100 * prior_overall(1222, 27.36) == pytest.approx(6.0, abs=0.5)
    with pytest.raises(ValueError):
        prior_overall(100, 99)


def test_prior_overall_is_weighted_mean():
    pv = priors(300, 6.0)
    w = pv.expected_counts[1:]
    assert pv.overall == pytest.approx(np.dot(w, pv.per_class[1:]) / w.sum())
    with_edges = prior_overall(300, 6.0, include_edges=True)
    assert with_edges == pytest.approx(
        np.dot(pv.expected_counts, pv.per_class) / pv.expected_counts.sum())


def test_local_threshold():
    assert local_convexity_threshold(4941, 2.67) == pytest.approx(8.66, abs=0.01)
    assert local_convexity_threshold(183, 26.60) == pytest.approx(1.59, abs=0.01)
    assert local_convexity_threshold(7, 7) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        local_convexity_threshold(100, 1.0)


def test_expansion_threshold():
    assert expansion_threshold(24, 2) == pytest.approx(4.0, abs=1e-9)
    for n, k in [(4941, 2.67), (1000, 5.0), (1222, 27.36), (10**6, 10.0)]:
        s = expansion_threshold(n, k)
        assert abs(k ** math.sqrt(s) * s * (s - 1) / 2 - n) / n < 1e-8
    assert expansion_threshold(2000, 4) > expansion_threshold(1000, 4)
    with pytest.raises(ValueError):
        expansion_threshold(3, 5.0)


def test_expansion_threshold_between_log_and_square():
    for n in (200, 1000, 5000, 20000):
        for k in (3.0, 5.0, 10.0):
            lo = local_convexity_threshold(n, k)
            s = expansion_threshold(n, k)
            assert lo <= s <= max(lo**2, 2.0)


# --- sampler -----------------------------------------------------------------

def test_sampler_trivial(rng):
    for size in (2, 3, 5):
        frac, se = sample_connected_induced(complete_graph(12), size, 200, rng)
        assert frac == 1.0 and se == 0.0
        frac, _ = sample_connected_induced(random_tree(rng, 30), size, 200, rng)
        assert frac == 1.0


def test_sampler_cycle4(rng):
    frac, _ = sample_connected_induced(cycle(4), 3, 100, rng)
    assert frac == 0.0


def test_sampler_matches_prior_blend():
    rng = np.random.default_rng(7)
    n, k = 500, 8.0
    g = gen_er_connected(n, int(n * k / 2), rng)
    frac, se = sample_connected_induced(g, 3, 4000, rng)
    p = k / (n - 1)
    pr = prior_graphlet_convexity(n, p)
    w = expected_graphlet_counts(n, p)
    blend = (w[1] * pr[1] + w[2] * pr[2]) / (w[1] + w[2])
    assert abs(frac - blend) < 3 * se


def test_sampler_errors(rng):
    with pytest.raises(ValueError):
        sample_connected_induced(cycle(5), 1, 10, rng)
    with pytest.raises(RuntimeError):
        g = build_graph([(i, i + 1) for i in range(300)])
        sample_connected_induced(g, 6, 10, rng, max_draws=1000, batch=1000)
