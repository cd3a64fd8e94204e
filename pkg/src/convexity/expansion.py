"""Randomized growth of convex node subsets.

Each run starts from a seed node and repeatedly follows a uniform boundary
edge out of the current set ``S``, then replaces ``S`` with the convex hull of
``S`` plus the new node.  Runs record the subset size and diameter per step.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from ._accel import USE_NUMBA, thread_count
from .graph import Graph

Z99 = 2.576  # two-sided 99% normal quantile

SEED_MODES = ("random", "central")


@dataclass(frozen=True)
class ExpansionConfig:
    runs: int = 100
    max_steps: int | None = None  # None: n - 1
    seed_mode: str = "random"
    rng_seed: int = 0
    checkpoint: int = 15

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.seed_mode not in SEED_MODES:
            raise ValueError(f"seed_mode must be one of {SEED_MODES}")
        if self.checkpoint < 0:
            raise ValueError("checkpoint must be >= 0")


@dataclass(frozen=True, eq=False)
class ExpansionTrace:
    """Integer subset sizes and diameters for steps ``0..len(sizes)-1``."""

    n: int
    seed: int
    sizes: np.ndarray
    diameters: np.ndarray
    checkpoint_members: frozenset

    @property
    def s(self) -> np.ndarray:
        """Fraction of nodes in the subset per step."""
        return self.sizes / self.n

    @property
    def covered_at(self) -> int | None:
        """First step at which the subset spans the graph, if reached."""
        return len(self.sizes) - 1 if self.sizes[-1] == self.n else None

    @property
    def steps(self) -> int:
        return len(self.sizes) - 1


@dataclass(frozen=True, eq=False)
class AggregatedCurve:
    n: int
    runs: int
    t: np.ndarray
    mean: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    count: np.ndarray
    d_mean: np.ndarray
    d_lower: np.ndarray
    d_upper: np.ndarray


def central_node(g: Graph) -> int:
    """Node with the smallest mean distance to the others (lowest id on ties)."""
    total, _, _ = K.all_sources(g.indptr, g.indices)
    return int(np.argmin(total))


def _max_steps(g, cfg):
    return g.n - 1 if cfg.max_steps is None else min(cfg.max_steps, g.n - 1)


def _run(g, seed, uniforms, max_steps, checkpoint):
    n = g.n
    sizes = np.zeros(max_steps + 1, np.int64)
    diams = np.zeros(max_steps + 1, np.int64)
    snap = np.zeros(n, np.uint8)
    last = int(K.expand_run(g.indptr, g.indices, int(seed), uniforms,
                            int(max_steps), int(checkpoint), sizes, diams, snap))
    return ExpansionTrace(n=n, seed=int(seed), sizes=sizes[:last + 1].copy(),
                          diameters=diams[:last + 1].copy(),
                          checkpoint_members=frozenset(np.flatnonzero(snap).tolist()))


def expand_once(g: Graph, cfg: ExpansionConfig, rng: np.random.Generator,
                seed: int | None = None) -> ExpansionTrace:
    """One growth run driven by ``rng``.

    ``seed`` overrides the seed node; otherwise it is drawn according to
    ``cfg.seed_mode``.
    """
    if g.n < 2:
        raise ValueError("expansion needs at least two nodes")
    steps = _max_steps(g, cfg)
    if seed is None:
        seed = central_node(g) if cfg.seed_mode == "central" else int(rng.integers(g.n))
    uniforms = rng.random(steps)
    return _run(g, seed, uniforms, steps, cfg.checkpoint)


def run_streams(rng_seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators keyed by (seed, index)."""
    return [np.random.default_rng(s)
            for s in np.random.SeedSequence(rng_seed).spawn(count)]


def expand_ensemble(g: Graph, cfg: ExpansionConfig, threads: int | None = None):
    """``cfg.runs`` independent traces and per-node checkpoint frequencies."""
    if g.n < 2:
        raise ValueError("expansion needs at least two nodes")
    fixed = central_node(g) if cfg.seed_mode == "central" else None
    streams = run_streams(cfg.rng_seed, cfg.runs)

    def one(rng):
        return expand_once(g, cfg, rng, seed=fixed)

    workers = thread_count() if threads is None else max(1, threads)
    if USE_NUMBA and workers > 1 and cfg.runs > 1:
        with ThreadPoolExecutor(max_workers=min(workers, cfg.runs)) as pool:
            traces = list(pool.map(one, streams))
    else:
        traces = [one(r) for r in streams]
    return traces, membership_frequency(traces, g.n)


def membership_frequency(traces, n: int) -> np.ndarray:
    counts = np.zeros(n, np.int64)
    for tr in traces:
        counts[list(tr.checkpoint_members)] += 1
    return counts / len(traces)


def _padded(rows, length):
    out = np.empty((len(rows), length), np.int64)
    for i, r in enumerate(rows):
        out[i, :len(r)] = r
        out[i, len(r):] = r[-1]
    return out


def _band(values):
    runs = values.shape[0]
    mean = values.mean(axis=0)
    if runs > 1:
        se = values.std(axis=0, ddof=1) / np.sqrt(runs)
    else:
        se = np.zeros_like(mean)
    return mean, mean - Z99 * se, mean + Z99 * se


def aggregate_curves(traces) -> AggregatedCurve:
    """Per-step mean and 99% normal confidence band of s(t) and D(t).

    Runs that covered the graph early keep contributing ``s = 1`` (and their
    final diameter) at later steps.
    """
    if not traces:
        raise ValueError("need at least one trace")
    n = traces[0].n
    length = max(len(tr.sizes) for tr in traces)
    sizes = _padded([tr.sizes for tr in traces], length)
    diams = _padded([tr.diameters for tr in traces], length)
    mean, lo, hi = _band(sizes)
    d_mean, d_lo, d_hi = _band(diams)
    count = np.array([sum(len(tr.sizes) > t for tr in traces) for t in range(length)])
    return AggregatedCurve(n=n, runs=len(traces), t=np.arange(length),
                           mean=mean / n, lower=lo / n, upper=hi / n, count=count,
                           d_mean=d_mean, d_lower=d_lo, d_upper=d_hi)
