"""Switch between numba-compiled and plain Python search kernels.

The kernels in :mod:`p3pack.kernels` are written in the subset of Python
that numba can compile.  By default they are wrapped with ``numba.njit``;
setting ``P3PACK_NUMBA=0`` in the environment (before import) runs the
same source as ordinary Python on numpy arrays, which is slow but handy
for debugging and for platforms without numba.
"""

import os

_FLAG = os.environ.get("P3PACK_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend() -> str:
    return "numba" if USE_NUMBA else "python"
