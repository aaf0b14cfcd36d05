"""Inputs shared by every solver: validated image, fitting kernel and edge map."""

from typing import NamedTuple

import numpy as np

from .filters import Kernel2D, edge_detector, gaussian_kernel, isef_kernel
from .grid import as_field


class Prepared(NamedTuple):
    f: np.ndarray
    kernel: Kernel2D
    g: np.ndarray


def prepare(f, cfg):
    """Validate ``f > 0`` and build the Gaussian fitting kernel and edge map.

    The edge map is computed on ``f / max(f)`` so that it, like every other
    ingredient of the model, is unchanged when the image is rescaled.
    """
    f = as_field(f, "image")
    if np.any(f <= 0):
        raise ValueError("image must be strictly positive")
    kernel = gaussian_kernel(cfg.sigma, cfg.kernel_radius)
    g = edge_detector(f / f.max(), cfg.beta, isef_kernel(cfg.isef_sigma, cfg.isef_size))
    return Prepared(f, kernel, g)


def residual(new, old):
    """Discrete L2 norm of the change between two iterates."""
    return float(np.sqrt(np.sum((new - old) ** 2)))
