"""Convexity measures over expansion traces and the convexity core."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expansion import AggregatedCurve, ExpansionTrace
from .graph import Graph, k_core


def x_convexity(trace: ExpansionTrace, c: float, max_terms: int = 100) -> float:
    """c-convexity of one run: one minus the summed c-th roots of excess growth.

    The excess at step t is ``max(s(t) - s(t-1) - 1/n, 0)``; only the first
    ``max_terms`` steps enter the sum (steps past coverage contribute zero).
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    excess = np.diff(trace.sizes)[:max_terms] - 1
    excess = np.maximum(excess, 0)
    if c == 1:
        return 1.0 - excess.sum() / trace.n
    return 1.0 - float(np.sum((excess / trace.n) ** (1.0 / c)))


def x1_closed_form(trace: ExpansionTrace) -> float:
    """``(t' + 1) / n`` for a run that covered the graph at step ``t'``."""
    if trace.covered_at is None:
        raise ValueError("trace did not cover the graph")
    return (trace.covered_at + 1) / trace.n


def mean_x_convexity(traces, c: float, max_terms: int = 100) -> float:
    if not traces:
        raise ValueError("need at least one trace")
    return float(np.mean([x_convexity(tr, c, max_terms) for tr in traces]))


def max_convex_size(curve: AggregatedCurve, mode: str = "strict") -> int:
    """Largest subset size still growing without expansion.

    ``1 + max{t : lower(t) < (t + c + 1) / n}`` where ``lower`` is the 99%
    lower confidence bound of s(t), with ``c = 1`` ("strict") or ``c = t``
    ("relaxed").
    """
    t = curve.t
    if mode == "strict":
        c = 1
    elif mode == "relaxed":
        c = t
    else:
        raise ValueError("mode must be 'strict' or 'relaxed'")
    # compare in node units to avoid rounding on exact ties
    ok = curve.lower * curve.n < t + c + 1 - 1e-9
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return 0
    return 1 + int(t[hits[-1]])


@dataclass(frozen=True)
class CorePeripheryPartition:
    core: frozenset
    periphery: frozenset
    threshold: float


@dataclass(frozen=True)
class PartitionDensities:
    """Edge densities per block; ``None`` where the block has no node pairs."""

    core_core: float | None
    core_periphery: float | None
    periphery_periphery: float | None


@dataclass(frozen=True, eq=False)
class KCoreComparison:
    k: np.ndarray
    share_of_ccore: np.ndarray  # |C & K_k| / |C|
    share_of_kcore: np.ndarray  # |C & K_k| / |K_k|
    jaccard: np.ndarray


def detect_c_core(freq, threshold: float = 0.9) -> CorePeripheryPartition:
    """Nodes included in at least ``threshold`` of the grown subsets."""
    freq = np.asarray(freq, dtype=float)
    inside = freq >= threshold
    return CorePeripheryPartition(
        core=frozenset(np.flatnonzero(inside).tolist()),
        periphery=frozenset(np.flatnonzero(~inside).tolist()),
        threshold=threshold,
    )


def _ratio(num, den):
    return num / den if den > 0 else None


def partition_densities(g: Graph, part: CorePeripheryPartition) -> PartitionDensities:
    incore = np.zeros(g.n, bool)
    incore[list(part.core)] = True
    e = g.edges()
    a = incore[e[:, 0]]
    b = incore[e[:, 1]]
    cc = int(np.sum(a & b))
    pp = int(np.sum(~a & ~b))
    cp = g.m - cc - pp
    nc = len(part.core)
    npp = g.n - nc
    return PartitionDensities(
        core_core=_ratio(cc, nc * (nc - 1) / 2),
        core_periphery=_ratio(cp, nc * npp),
        periphery_periphery=_ratio(pp, npp * (npp - 1) / 2),
    )


def compare_with_kcore(g: Graph, part: CorePeripheryPartition,
                       cores: np.ndarray | None = None) -> KCoreComparison:
    """Overlap of the c-core with every k-core, k = 1..max core number."""
    if cores is None:
        cores = k_core(g)
    incore = np.zeros(g.n, bool)
    incore[list(part.core)] = True
    size_c = int(incore.sum())
    ks = np.arange(1, int(cores.max()) + 1)
    share_c = np.empty(ks.shape[0])
    share_k = np.empty(ks.shape[0])
    jac = np.empty(ks.shape[0])
    for i, k in enumerate(ks):
        kset = cores >= k
        inter = int(np.sum(kset & incore))
        union = int(np.sum(kset | incore))
        size_k = int(kset.sum())
        share_c[i] = inter / size_c if size_c else 0.0
        share_k[i] = inter / size_k if size_k else 0.0
        jac[i] = inter / union if union else 0.0
    return KCoreComparison(k=ks, share_of_ccore=share_c, share_of_kcore=share_k,
                           jaccard=jac)
