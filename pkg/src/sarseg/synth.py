"""Synthetic speckled test scenes: piecewise-constant truth x shading x gamma speckle."""

from dataclasses import dataclass, field

import numpy as np

LAYOUTS = ("disk", "ring", "blobs")
SHADINGS = ("ramp", "radial", "none")


@dataclass
class Phantom:
    clean: np.ndarray
    shading: np.ndarray
    observed: np.ndarray
    truth_mask: np.ndarray
    looks: int
    seed: int
    params: dict = field(default_factory=dict)


def gamma_speckle(width, height, looks, seed):
    """Unit-mean gamma speckle with variance ``1/looks``, shape (height, width)."""
    if looks < 1:
        raise ValueError(f"looks must be >= 1, got {looks}")
    rng = np.random.default_rng(seed)
    return rng.gamma(shape=float(looks), scale=1.0 / looks, size=(height, width))


def layout_mask(layout, size):
    """Boolean foreground mask for a built-in layout on a ``size`` x ``size`` grid."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    c = (size - 1) / 2.0
    r = np.hypot(yy - c, xx - c)
    if layout == "disk":
        return r <= 0.3 * size
    if layout == "ring":
        return (r <= 0.36 * size) & (r >= 0.18 * size)
    if layout == "blobs":
        a = np.hypot(yy - 0.35 * size, xx - 0.3 * size) <= 0.17 * size
        b = np.hypot(yy - 0.65 * size, xx - 0.68 * size) <= 0.2 * size
        return a | b
    raise ValueError(f"unknown layout {layout!r}; expected one of {LAYOUTS}")


def shading_field(kind, size, amplitude):
    """Multiplicative bias ranging over ``[1 - amplitude, 1 + amplitude]``."""
    if not 0 <= amplitude < 1:
        raise ValueError(f"shading amplitude must lie in [0, 1), got {amplitude}")
    if kind == "none":
        return np.ones((size, size))
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    if kind == "ramp":
        s = xx / (size - 1)
        return (1.0 - amplitude) + 2.0 * amplitude * s
    if kind == "radial":
        c = (size - 1) / 2.0
        r = np.hypot(yy - c, xx - c) / np.hypot(c, c)
        return (1.0 + amplitude) - 2.0 * amplitude * r
    raise ValueError(f"unknown shading {kind!r}; expected one of {SHADINGS}")


def _clean(layout, size, levels):
    bg, fg = (float(v) for v in levels)
    if not (0 < bg <= 255 and 0 < fg <= 255):
        raise ValueError(f"levels must lie in (0, 255], got {tuple(levels)}")
    mask = layout_mask(layout, size)
    return mask, np.where(mask, fg, bg)


DEFAULT_LEVELS = (20.0, 230.0)
DEFAULT_AMPLITUDE = 0.85
OVERLAP_LEVELS = (50.0, 200.0)
OVERLAP_AMPLITUDE = 0.95


def make_phantom(layout="disk", size=125, levels=DEFAULT_LEVELS, shading="ramp",
                 amplitude=DEFAULT_AMPLITUDE, looks=8, seed=0):
    """Build a speckled scene.

    Parameters
    ----------
    layout : {"disk", "ring", "blobs"}
    size : int
        Side length in pixels.
    levels : tuple of float
        (background, foreground) gray levels in (0, 255].
    shading : {"ramp", "radial", "none"}
    amplitude : float
        Shading swing; the bias ranges over ``[1 - amplitude, 1 + amplitude]``.
    looks : int
        Speckle look count ``L``; noise variance is ``1/L``.
    seed : int

    Notes
    -----
    With the defaults the ramp scales intensity by 0.15 to 1.85 from left to
    right, a twelvefold swing in the local background level. The two clean
    regions still separate globally; pass ``levels=OVERLAP_LEVELS`` and
    ``amplitude=OVERLAP_AMPLITUDE`` for a scene where the shaded foreground
    on the dark side is darker than the shaded background on the bright side.
    """
    mask, clean = _clean(layout, size, levels)
    bg, fg = float(levels[0]), float(levels[1])
    shade = shading_field(shading, size, amplitude)
    noise = gamma_speckle(size, size, looks, seed)
    observed = clean * shade * noise
    params = dict(layout=layout, size=size, levels=[bg, fg], shading=shading,
                  amplitude=amplitude, looks=looks, seed=seed)
    return Phantom(clean, shade, observed, mask, looks, seed, params)


def noise_free(layout="disk", size=125, levels=DEFAULT_LEVELS, shading="ramp",
               amplitude=DEFAULT_AMPLITUDE):
    """Same scene without speckle: ``clean * shading``."""
    mask, clean = _clean(layout, size, levels)
    shade = shading_field(shading, size, amplitude)
    params = dict(layout=layout, size=size, levels=[float(v) for v in levels], shading=shading,
                  amplitude=amplitude, looks=None, seed=None)
    return Phantom(clean, shade, clean * shade, mask, 0, 0, params)
