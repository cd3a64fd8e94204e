"""Command-line front end.

Usage: ``convexity <command> [options]`` with commands stats, expand,
measures, graphlets, core and priors.  Exit status is 0 on success, 1 on
usage errors and 2 on data errors.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import graphlets as GL
from . import measures as M
from . import random_models as R
from .expansion import ExpansionConfig, aggregate_curves, expand_ensemble, expand_once
from .graph import Graph, graph_stats, k_core
from .report import (
    FORMATS,
    DataError,
    Table,
    file_digest,
    fingerprint,
    read_graph,
    write_tables,
)

COMMANDS = ("stats", "expand", "measures", "graphlets", "core", "priors")
NULLS = ("none", "er", "rewire", "both")
ER_REJECTION_TRIES = 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _fraction(s):
    v = float(s)
    if not 0 < v <= 1:
        raise argparse.ArgumentTypeError("must lie in (0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="edge-list file")
    common.add_argument("--format", choices=FORMATS, default="edgelist")
    common.add_argument("--runs", type=_positive_int, default=100)
    common.add_argument("--steps", type=_positive_int, default=None,
                        help="maximum expansion steps (default n-1)")
    common.add_argument("--seed", type=_nonneg_int, default=0)
    common.add_argument("--seed-mode", choices=("random", "central"), default="random")
    common.add_argument("--c", type=float, nargs="+", default=[1.0, 1.1],
                        help="c values for X_c")
    common.add_argument("--core-threshold", type=_fraction, default=0.9)
    common.add_argument("--checkpoint", type=_nonneg_int, default=15)
    common.add_argument("--null", choices=NULLS, default="none")
    common.add_argument("--census", choices=("exact", "sampled"), default="exact")
    common.add_argument("--samples", type=_positive_int, default=100_000,
                        help="samples per subgraph size in sampled census mode")
    common.add_argument("--path-prior", choices=R.PATH_FORMS, default="closed")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--json", action="store_true", help="write JSON instead of CSV")

    parser = _Parser(prog="convexity", description="Convexity analysis of networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "priors":
            p.add_argument("--n", type=_positive_int, required=True)
            p.add_argument("--k", type=_positive_float, required=True)
    return parser


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def _config(args) -> dict:
    keys = ("command", "format", "runs", "steps", "seed", "seed_mode", "c",
            "core_threshold", "checkpoint", "null", "census", "samples",
            "path_prior", "json")
    cfg = {k: getattr(args, k) for k in keys}
    if args.command == "priors":
        cfg.update(n=args.n, k=args.k)
    return cfg


def _load(args) -> tuple[Graph, str]:
    if not args.input:
        raise UsageError(f"{args.command} needs --input")
    g, red = read_graph(args.input, args.format)
    print(red.summary(), file=sys.stderr)
    if g.n < 3:
        raise DataError("graph has fewer than 3 nodes after reduction")
    return g, file_digest(args.input)


def _expansion_cfg(args, rng_seed=None) -> ExpansionConfig:
    return ExpansionConfig(runs=args.runs, max_steps=args.steps, seed_mode=args.seed_mode,
                           rng_seed=args.seed if rng_seed is None else rng_seed,
                           checkpoint=args.checkpoint)


def _stream(seed, tag):
    return np.random.default_rng(np.random.SeedSequence([seed, tag]))


def er_like(g: Graph, rng) -> Graph:
    """Connected G(n, m) matching ``g``; edge walk when rejection stalls."""
    try:
        return R.gen_er_connected(g.n, g.m, rng, max_attempts=ER_REJECTION_TRIES)
    except RuntimeError:
        return R.er_connected_walk(g.n, g.m, rng)


def _null_models(args):
    return {"none": [], "er": ["er"], "rewire": ["rewired"],
            "both": ["rewired", "er"]}[args.null]


def _null_traces(g, args, model):
    """One fresh null graph per run, each grown once."""
    tag = {"rewired": 1, "er": 2}[model]
    cfg = _expansion_cfg(args)
    rng = _stream(args.seed, tag)
    traces = []
    first = None
    for _ in range(args.runs):
        h = R.rewire_preserving_degrees(g, rng) if model == "rewired" else er_like(g, rng)
        if first is None:
            first = h
        traces.append(expand_once(h, cfg, rng))
    return traces, first


def _census(h, args, tag=3):
    if args.census == "exact":
        return GL.census(h)
    return GL.census(h, "sampled", args.samples, _stream(args.seed, tag))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_stats(args):
    g, digest = _load(args)
    st = graph_stats(g)
    main = Table("stats", ["n", "m", "avg_degree", "avg_clustering", "avg_geodesic", "mu"])
    main.add(st.n, st.m, st.avg_degree, st.avg_clustering, st.avg_geodesic, st.mu)
    nodes = Table("nodes", ["node", "degree", "triangles", "clustering",
                            "clustering_mu", "mean_distance", "core"])
    cores = k_core(g)
    for i in range(g.n):
        nodes.add(g.labels[i], st.degree[i], st.triangles[i], st.clustering[i],
                  st.clustering_mu[i], st.mean_distance[i], cores[i])
    return [main, nodes], digest


def _curve_rows(table, model, curve, scale):
    for j in range(curve.t.shape[0]):
        t = int(curve.t[j])
        table.add(model, t, t / scale, curve.mean[j], curve.lower[j], curve.upper[j],
                  curve.count[j], curve.d_mean[j], curve.d_lower[j], curve.d_upper[j])


def cmd_expand(args):
    g, digest = _load(args)
    table = Table("expand", ["model", "t", "t_rescaled", "s_mean", "s_lower", "s_upper",
                             "runs", "d_mean", "d_lower", "d_upper"])
    traces, _ = expand_ensemble(g, _expansion_cfg(args))
    _curve_rows(table, "network", aggregate_curves(traces), graph_stats(g).avg_geodesic)
    for model in _null_models(args):
        ntr, _ = _null_traces(g, args, model)
        if model == "er":
            scale = R.local_convexity_threshold(g.n, 2 * g.m / g.n)
        else:
            scale = graph_stats(g).avg_geodesic
        _curve_rows(table, model, aggregate_curves(ntr), scale)
    return [table], digest


def _measure_column(h, traces, args, census_graph):
    curve = aggregate_curves(traces)
    col = {}
    for c in args.c:
        col[f"X_{c:g}"] = M.mean_x_convexity(traces, c)
    col["L_1"] = M.max_convex_size(curve, "strict")
    col["L_t"] = M.max_convex_size(curve, "relaxed")
    covered = [tr.covered_at for tr in traces if tr.covered_at is not None]
    col["t_prime_mean"] = float(np.mean(covered)) if covered else None
    _, col["P"] = GL.convex_probabilities(_census(census_graph, args))
    return col


def cmd_measures(args):
    if any(c < 1 for c in args.c):
        raise UsageError("--c values must be >= 1")
    g, digest = _load(args)
    k = 2 * g.m / g.n
    traces, _ = expand_ensemble(g, _expansion_cfg(args))
    cols = {"network": _measure_column(g, traces, args, g)}
    for model in _null_models(args):
        ntr, first = _null_traces(g, args, model)
        cols[model] = _measure_column(first, ntr, args, first)
    shared = {"P_prior": R.prior_overall(g.n, k, path_form=args.path_prior)
              if 0 < k < g.n - 1 and g.n >= 5 else None,
              "local_threshold": R.local_convexity_threshold(g.n, k) if k > 1 else None}
    names = list(cols)
    table = Table("measures", ["measure"] + names)
    for key in cols["network"]:
        table.add(key, *[cols[nm][key] for nm in names])
    for key, val in shared.items():
        table.add(key, *[val] * len(names))
    return [table], digest


def cmd_graphlets(args):
    g, digest = _load(args)
    cen = _census(g, args)
    per, overall = GL.convex_probabilities(cen)
    k = 2 * g.m / g.n
    ok_prior = g.n >= 5 and 0 < k < g.n - 1
    p = k / (g.n - 1)
    prior = R.prior_graphlet_convexity(g.n, p, args.path_prior) if ok_prior else [None] * 9
    expected = R.expected_graphlet_counts(g.n, p) if ok_prior else [None] * 9
    table = Table("graphlets", ["class", "name", "size", "edges", "g", "c", "P",
                                "g_se", "c_se", "P_prior", "g_expected"])
    for i, cl in enumerate(GL.CLASSES):
        table.add(f"G{i}", cl.name, cl.size, cl.edges, cen.g[i], cen.c[i],
                  None if math.isnan(per[i]) else per[i],
                  None if cen.g_se is None else cen.g_se[i],
                  None if cen.c_se is None else cen.c_se[i],
                  prior[i], expected[i])
    summary = Table("summary", ["mode", "sample_size", "P", "P_prior"])
    summary.add(cen.mode, cen.sample_size, overall,
                R.prior_overall(g.n, k, path_form=args.path_prior) if ok_prior else None)
    return [table, summary], digest


def cmd_core(args):
    g, digest = _load(args)
    traces, freq = expand_ensemble(g, _expansion_cfg(args))
    part = M.detect_c_core(freq, args.core_threshold)
    dens = M.partition_densities(g, part)
    cores = k_core(g)
    comp = M.compare_with_kcore(g, part, cores)

    def permille(x):
        return None if x is None else 1000 * x

    main = Table("core", ["threshold", "checkpoint", "core_size", "periphery_size",
                          "p_core_core_permille", "p_core_periphery_permille",
                          "p_periphery_periphery_permille"])
    main.add(args.core_threshold, args.checkpoint, len(part.core), len(part.periphery),
             permille(dens.core_core), permille(dens.core_periphery),
             permille(dens.periphery_periphery))
    nodes = Table("nodes", ["node", "frequency", "in_core", "core_number"])
    for i in range(g.n):
        nodes.add(g.labels[i], freq[i], int(i in part.core), cores[i])
    kc = Table("kcore", ["k", "share_of_ccore", "share_of_kcore", "jaccard"])
    for j in range(comp.k.shape[0]):
        kc.add(comp.k[j], comp.share_of_ccore[j], comp.share_of_kcore[j], comp.jaccard[j])
    return [main, nodes, kc], digest


def cmd_priors(args):
    n, k = args.n, args.k
    if n < 5:
        raise UsageError("--n must be >= 5")
    if not 1 < k < n - 1:
        raise UsageError("--k must lie in (1, n-1)")
    pv = R.priors(n, k, path_form=args.path_prior)
    try:
        s_exp = R.expansion_threshold(n, k)
    except ValueError:
        s_exp = None
    main = Table("priors", ["n", "avg_degree", "p", "P_prior_percent", "local_threshold",
                            "expansion_threshold"])
    main.add(n, k, pv.p, 100 * pv.overall, pv.local_threshold, s_exp)
    classes = Table("classes", ["class", "name", "P_prior", "g_expected"])
    for i, cl in enumerate(GL.CLASSES):
        classes.add(f"G{i}", cl.name, pv.per_class[i], pv.expected_counts[i])
    return [main, classes], None


HANDLERS = {"stats": cmd_stats, "expand": cmd_expand, "measures": cmd_measures,
            "graphlets": cmd_graphlets, "core": cmd_core, "priors": cmd_priors}


def run(args) -> list:
    tables, digest = HANDLERS[args.command](args)
    meta = {"command": args.command, "seed": args.seed,
            "fingerprint": fingerprint(_config(args), digest)}
    return write_tables(args.out, args.command, tables, meta, args.json)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        paths = run(args)
    except UsageError as exc:
        print(f"convexity: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"convexity: data error: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
