"""Neumann double-sum kernel backends.

The compiled Cython kernel is preferred; a vectorized NumPy fallback is
selected when the extension is missing.  Set ``RIPTSIM_KERNEL=numpy`` (or
``cython``) to force a backend, e.g. for benchmarking.
"""

import os

from riptsim._kernels import numpy_backend

_forced = os.environ.get("RIPTSIM_KERNEL", "").lower()

if _forced == "numpy":
    pair_sum = numpy_backend.pair_sum
    BACKEND = "numpy"
else:
    try:
        from riptsim._kernels._neumann import pair_sum  # noqa: F401
        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        pair_sum = numpy_backend.pair_sum
        BACKEND = "numpy"

__all__ = ["pair_sum", "BACKEND"]
