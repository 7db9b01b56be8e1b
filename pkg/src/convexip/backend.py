"""Kernel backend selection.

The hot kernels in :mod:`convexip._kernels` exist in two builds: loop
code compiled with numba's ``@njit``, and a vectorised pure-numpy
fallback.  The environment variable ``CONVEXIP_BACKEND`` picks one:

    CONVEXIP_BACKEND=numba   (default) jit-compile the loop kernels
    CONVEXIP_BACKEND=numpy   force the vectorised numpy fallbacks

With the default setting the numpy build is still used when numba is
not importable.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

_raw = os.environ.get("CONVEXIP_BACKEND", "numba").strip().lower()
if _raw not in ("numba", "numpy"):
    raise ValueError("CONVEXIP_BACKEND must be 'numba' or 'numpy', got %r" % _raw)

HAVE_NUMBA = False
if _raw == "numba":
    try:
        from numba import njit  # noqa: F401
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        pass

USING_NUMBA = HAVE_NUMBA and _raw == "numba"


def jit(fn):
    """Return ``fn`` jit-compiled when the numba backend is active."""
    if USING_NUMBA:
        from numba import njit

        return njit(cache=True)(fn)
    return fn
