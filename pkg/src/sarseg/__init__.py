"""Segmentation of speckled images with a local-statistics active contour.

Four solvers share one model: an explicit level-set flow (``levelset``), a
split Bregman solver for the convex relaxation (``sb``) and two fixed-point
solvers (``fp1``, ``fp2``).
"""

from ._backend import BACKEND
from .config import SOLVERS, ConfigError, SegmentationResult, SolverConfig, default_config, published_config
from .fixed_point import run_fp1, run_fp2
from .levelset import Rect, run_levelset
from .metrics import dsc, pp_uniformity
from .solvers import segment
from .split_bregman import run_sb_lacm
from .synth import make_phantom, noise_free

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "SOLVERS", "ConfigError", "SegmentationResult", "SolverConfig",
    "default_config", "published_config", "run_fp1", "run_fp2", "Rect", "run_levelset",
    "dsc", "pp_uniformity", "segment", "run_sb_lacm", "make_phantom", "noise_free",
]
