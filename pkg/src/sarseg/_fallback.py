"""Pure numpy implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature
and the same floating-point operation order, so both backends produce
bitwise-identical output.
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _diagonals(height, width):
    """Index arrays for each anti-diagonal i + j = s, plus clamped neighbours."""
    out = []
    for s in range(height + width - 1):
        i = np.arange(max(0, s - width + 1), min(height - 1, s) + 1)
        j = s - i
        up = np.maximum(i - 1, 0)
        down = np.minimum(i + 1, height - 1)
        left = np.maximum(j - 1, 0)
        right = np.minimum(j + 1, width - 1)
        out.append((i, j, up, down, left, right))
    return tuple(out)


def gs_sweep(phi, rhs):
    """One in-place Gauss-Seidel sweep ``phi <- clip(0.25 * (nbrs + rhs), 0, 1)``.

    The reference order is row-major. Pixel (i, j) reads the already-updated
    (i-1, j), (i, j-1) and the old (i+1, j), (i, j+1), so sweeping
    anti-diagonals in increasing order reproduces row-major results exactly
    while each diagonal is updated as one vector operation. Out-of-range
    neighbours are replicated from the pixel itself.
    """
    h, w = phi.shape
    for i, j, up, down, left, right in _diagonals(h, w):
        s = phi[up, j] + phi[down, j]
        s = s + phi[i, left]
        s = s + phi[i, right]
        s = s + rhs[i, j]
        v = 0.25 * s
        phi[i, j] = np.minimum(np.maximum(v, 0.0), 1.0)
    return phi


def correlate_rows(f, w):
    """Correlate every row of ``f`` with the 1-D taps ``w`` (replicate edges)."""
    r = (len(w) - 1) // 2
    n = f.shape[1]
    pad = np.pad(f, ((0, 0), (r, r)), mode="edge")
    acc = np.zeros_like(f)
    for t in range(len(w)):
        acc += w[t] * pad[:, t:t + n]
    return acc


def correlate_cols(f, w):
    r = (len(w) - 1) // 2
    n = f.shape[0]
    pad = np.pad(f, ((r, r), (0, 0)), mode="edge")
    acc = np.zeros_like(f)
    for t in range(len(w)):
        acc += w[t] * pad[t:t + n, :]
    return acc


def correlate_direct(f, w):
    """Direct 2-D summation over every tap, row-major tap order."""
    ry = (w.shape[0] - 1) // 2
    rx = (w.shape[1] - 1) // 2
    h, wd = f.shape
    pad = np.pad(f, ((ry, ry), (rx, rx)), mode="edge")
    acc = np.zeros_like(f)
    for a in range(w.shape[0]):
        for b in range(w.shape[1]):
            acc += w[a, b] * pad[a:a + h, b:b + wd]
    return acc
