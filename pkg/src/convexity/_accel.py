"""Backend selection for the hot graph kernels.

Kernels are compiled with numba when it is importable and the environment
variable ``CONVEXITY_NO_JIT`` is unset (or ``0``).  Otherwise every kernel
runs as plain Python, and the dispatch layer in :mod:`convexity.kernels`
swaps in numpy-vectorized versions where one exists.
"""

import os

_FLAG = "CONVEXITY_NO_JIT"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get(_FLAG, "0").strip() in ("", "0")
BACKEND = "numba" if USE_NUMBA else "numpy"


def jit(fn):
    """Compile ``fn`` in nopython mode, or return it untouched on the numpy path."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def thread_count():
    """Worker count from ``CONVEXITY_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("CONVEXITY_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        value = os.cpu_count() or 1
    return value
