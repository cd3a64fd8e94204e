"""Time the numba and numpy backends on the same workloads.

Each backend runs in its own interpreter because the choice is fixed at
import time by ``CONVEXITY_NO_JIT``.  Usage::

    python3 benchmarks/bench_backends.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def worker(repeat: int, quick: bool) -> dict:
    from convexity import BACKEND, ExpansionConfig, census, expand_ensemble, graph_stats, k_core
    from convexity.random_models import gen_er_connected, rewire_preserving_degrees

    n, m = (300, 750) if quick else (1000, 2500)
    runs = 10 if quick else 30
    rng = np.random.default_rng(1)
    g = gen_er_connected(n, m, rng)
    small = gen_er_connected(60, 140, rng)

    jobs = {
        "graph_stats": lambda: graph_stats(g),
        "k_core": lambda: k_core(g),
        f"expansion x{runs}": lambda: expand_ensemble(g, ExpansionConfig(runs=runs, rng_seed=2)),
        "census n=60": lambda: census(small),
        "rewire 10m": lambda: rewire_preserving_degrees(g, np.random.default_rng(3)),
    }
    t0 = time.perf_counter()
    for fn in jobs.values():  # first call pays compilation or cache load
        fn()
    warm = time.perf_counter() - t0
    return {"backend": BACKEND, "warm_up": warm,
            "timings": {k: _timed(fn, repeat) for k, fn in jobs.items()}}


def run_backend(no_jit: bool, repeat: int, quick: bool) -> dict:
    env = dict(os.environ, CONVEXITY_NO_JIT="1" if no_jit else "0")
    cmd = [sys.executable, __file__, "--worker", "--repeat", str(repeat)]
    if quick:
        cmd.append("--quick")
    out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller graphs")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        print(json.dumps(worker(args.repeat, args.quick)))
        return 0

    fast = run_backend(False, args.repeat, args.quick)
    slow = run_backend(True, args.repeat, args.quick)
    width = max(map(len, fast["timings"])) + 2
    print(f"{'workload':<{width}}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name, t_fast in fast["timings"].items():
        t_slow = slow["timings"][name]
        print(f"{name:<{width}}{t_fast:>11.4f}s{t_slow:>11.4f}s{t_slow / t_fast:>9.1f}x")
    print(f"{'(warm-up)':<{width}}{fast['warm_up']:>11.4f}s{slow['warm_up']:>11.4f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
