"""Locally fitted region means and the data-fitting force they induce.

For a membership field ``h`` in [0, 1], the foreground mean at x is the
kernel-weighted average of ``f`` over pixels weighted by ``h``; the
background mean uses ``1 - h``. The fitting field ``eta`` compares the
gamma log-likelihood terms ``log C + f / C`` of the two regions, smoothed by
the same kernel. Both are equivariant/invariant under ``f -> c f``.
"""

from typing import NamedTuple

import numpy as np

from .filters import convolve

FLOOR = 1e-8


class RegionStats(NamedTuple):
    c1: np.ndarray
    c2: np.ndarray

    def swapped(self):
        return RegionStats(self.c2, self.c1)


def update_region_means(f, h, k):
    """Spatially varying foreground/background means for membership ``h``.

    Parameters
    ----------
    f : ndarray
        Positive image.
    h : ndarray
        Soft membership in [0, 1] (``H_eps(phi)`` or a relaxed ``phi``).
    k : Kernel2D
        Normalized smoothing kernel.

    Returns
    -------
    RegionStats
        Denominators and results are floored at ``1e-8`` so an empty region
        never divides by zero.
    """
    f = np.asarray(f, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    hb = 1.0 - h
    c1 = convolve(h * f, k) / np.maximum(convolve(h, k), FLOOR)
    c2 = convolve(hb * f, k) / np.maximum(convolve(hb, k), FLOOR)
    return RegionStats(np.maximum(c1, FLOOR), np.maximum(c2, FLOOR))


def eta_field(f, stats, k, literal=False):
    """Fitting force: positive where ``f`` fits the background better.

    ``eta = K*log c1 + f * K*(1/c1) - K*log c2 - f * K*(1/c2)``.

    With ``literal=True`` the second ratio uses ``1/c1`` as printed in the
    original derivation, kept only for comparison runs.
    """
    f = np.asarray(f, dtype=np.float64)
    c1, c2 = stats
    inv1 = convolve(1.0 / c1, k)
    inv2 = inv1 if literal else convolve(1.0 / c2, k)
    return (convolve(np.log(c1), k) + f * inv1) - (convolve(np.log(c2), k) + f * inv2)
