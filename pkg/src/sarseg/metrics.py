"""Segmentation quality scores: Dice overlap and region uniformity."""

import numpy as np


def _mask(m, name):
    a = np.asarray(m)
    if a.dtype != bool:
        a = a != 0
    return a


def dsc(cs, gt):
    """Dice similarity ``2|CS & GT| / (|CS| + |GT|)``."""
    cs = _mask(cs, "cs")
    gt = _mask(gt, "gt")
    if cs.shape != gt.shape:
        raise ValueError(f"mask shapes differ: {cs.shape} vs {gt.shape}")
    total = int(cs.sum()) + int(gt.sum())
    if total == 0:
        raise ValueError("Dice is undefined for two empty masks")
    return 2.0 * int(np.logical_and(cs, gt).sum()) / total


def pp_uniformity(f, mask, normalize=True):
    """Region uniformity ``1 - (within-region sum of squares) / C``.

    With ``normalize=True``, ``C`` is the total sum of squared deviations
    from the global mean, so the score is at most 1, equals 1 when both
    regions are constant and 0 when the split explains nothing. With
    ``normalize=False``, ``C = 1``.
    """
    f = np.asarray(f, dtype=np.float64)
    m = _mask(mask, "mask")
    if f.shape != m.shape:
        raise ValueError(f"image and mask shapes differ: {f.shape} vs {m.shape}")
    inside, outside = f[m], f[~m]
    if inside.size == 0 or outside.size == 0:
        raise ValueError("both regions must be non-empty")
    within = np.sum((inside - inside.mean()) ** 2) + np.sum((outside - outside.mean()) ** 2)
    if not normalize:
        return float(1.0 - within)
    total = np.sum((f - f.mean()) ** 2)
    if total == 0:
        return 1.0
    return float(1.0 - within / total)
