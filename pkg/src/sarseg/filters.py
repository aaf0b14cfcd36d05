"""Smoothing kernels, convolution, the smoothed Heaviside/delta pair and the edge map."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _backend
from .grid import grad_forward


@dataclass(frozen=True)
class Kernel2D:
    """Normalized, symmetric, non-negative 2-D kernel of shape (2r+1, 2r+1).

    ``factors`` holds the 1-D (column, row) profiles when the kernel is their
    outer product; :func:`convolve` then takes the separable path.
    """

    weights: np.ndarray
    factors: Optional[Tuple[np.ndarray, np.ndarray]] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] % 2 == 0 or w.shape[1] % 2 == 0:
            raise ValueError(f"kernel must be 2-D with odd sides, got {w.shape}")
        if np.any(w < 0):
            raise ValueError("kernel weights must be non-negative")
        object.__setattr__(self, "weights", w)

    @property
    def radius(self):
        return (self.weights.shape[0] - 1) // 2

    @classmethod
    def identity(cls):
        one = np.ones(1)
        return cls(np.ones((1, 1)), (one, one))

    @classmethod
    def from_profile(cls, profile):
        """Separable kernel from a 1-D profile, normalized to unit sum."""
        p = np.asarray(profile, dtype=np.float64)
        p = p / p.sum()
        return cls(np.outer(p, p), (p, p))


def gaussian_profile(sigma, radius):
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    return np.exp(-(x * x) / (2.0 * sigma * sigma))


def gaussian_kernel(sigma, radius=None):
    """Truncated Gaussian of standard deviation ``sigma``.

    ``radius`` defaults to ``ceil(1.5 * sigma)``.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if radius is None:
        radius = int(math.ceil(1.5 * sigma))
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    return Kernel2D.from_profile(gaussian_profile(sigma, int(radius)))


def isef_profile(sigma, size):
    r = (size - 1) // 2
    x = np.arange(-r, r + 1, dtype=np.float64)
    return np.exp(-np.abs(x) / sigma) / (2.0 * sigma)


def isef_kernel(sigma=1.2, size=15):
    """Infinite symmetric exponential filter, truncated to ``size`` x ``size``.

    ``sigma`` is used as the scale of ``exp(-|x|/sigma)``.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if size < 1 or size % 2 == 0:
        raise ValueError(f"ISEF size must be odd and positive, got {size}")
    return Kernel2D.from_profile(isef_profile(sigma, size))


def convolve(f, k):
    """Filter ``f`` with ``k`` using replicate padding; output has f's shape.

    Kernels are symmetric, so correlation and convolution coincide.
    """
    f = np.asarray(f, dtype=np.float64)
    if k.factors is not None:
        col, row = k.factors
        return _backend.correlate_cols(_backend.correlate_rows(f, row), col)
    return _backend.correlate_direct(f, k.weights)


def heaviside_eps(phi, eps=1.0):
    """Smoothed Heaviside ``0.5 * (1 + (2/pi) * arctan(phi/eps))``.

    The odd part ``arctan(phi/eps)/pi`` is rounded to a multiple of 2**-53,
    which makes both ``0.5 + a`` and ``0.5 - a`` exact, so
    ``heaviside_eps(phi) + heaviside_eps(-phi) == 1`` holds bit for bit.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    a = np.arctan(np.divide(phi, eps)) / np.pi
    a = np.rint(a * 2.0 ** 53) * 2.0 ** -53
    return 0.5 + a


def delta_eps(phi, eps=1.0):
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return (1.0 / np.pi) * (eps / (eps * eps + np.square(phi)))


def edge_detector(f, beta=20.0, isef=None):
    """Edge map ``1 / (1 + beta * |grad(isef * f)|^2)``, valued in (0, 1]."""
    if isef is None:
        isef = isef_kernel()
    gx, gy = grad_forward(convolve(f, isef))
    return 1.0 / (1.0 + beta * (gx * gx + gy * gy))
