"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``SARSEG_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("SARSEG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        pass


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def gs_sweep(phi, rhs, impl=None):
    """In-place Gauss-Seidel sweep on a C-contiguous float64 ``phi``."""
    impl = impl or _impl
    return impl.gs_sweep(phi, _c(rhs))


def correlate_rows(f, w, impl=None):
    return (impl or _impl).correlate_rows(_c(f), _c(w))


def correlate_cols(f, w, impl=None):
    return (impl or _impl).correlate_cols(_c(f), _c(w))


def correlate_direct(f, w, impl=None):
    return (impl or _impl).correlate_direct(_c(f), _c(w))
