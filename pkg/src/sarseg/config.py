"""Solver configuration and result containers."""

import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import List, Optional

import numpy as np

SOLVERS = ("levelset", "sb", "fp1", "fp2")


class ConfigError(ValueError):
    """Raised for parameter combinations a solver cannot run with."""


@dataclass
class SolverConfig:
    """Every tunable of the four solvers.

    Not every solver reads every field: ``theta``, ``nu`` and ``dt`` drive the
    level-set flow only, ``lam`` is the split-Bregman penalty for ``sb`` and
    the dual step for ``fp1``/``fp2``, ``alpha`` and ``t`` belong to the
    fixed-point solvers.
    """

    theta: float = 200.0
    mu: float = 100.0
    nu: float = 0.2
    lam: float = 1.0
    alpha: float = 12.0
    t: float = 1e-5
    eps: float = 1.0
    beta: float = 20.0
    sigma: float = 15.0
    kernel_radius: Optional[int] = None
    isef_sigma: float = 1.2
    isef_size: int = 15
    gamma: float = 0.5
    dt: float = 1.0
    vol: float = 1.0
    max_iter: int = 100
    eta_literal: bool = False
    fp_unweighted_shrink: bool = False

    def replace(self, **changes):
        return replace(self, **changes)

    def validate(self, solver=None):
        if solver is not None and solver not in SOLVERS:
            raise ConfigError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
        for name in ("eps", "beta", "sigma", "isef_sigma", "lam", "alpha"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be positive, got {v}")
        if self.mu < 0:
            raise ConfigError(f"mu must be non-negative, got {self.mu}")
        if not 0.0 < self.gamma < 1.0:
            raise ConfigError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not 0.0 < self.t < 1.0:
            raise ConfigError(f"t must lie in (0, 1), got {self.t}")
        if self.isef_size < 1 or self.isef_size % 2 == 0:
            raise ConfigError(f"isef_size must be odd, got {self.isef_size}")
        if self.kernel_radius is not None and self.kernel_radius < 1:
            raise ConfigError(f"kernel_radius must be >= 1, got {self.kernel_radius}")
        if self.max_iter < 0:
            raise ConfigError(f"max_iter must be >= 0, got {self.max_iter}")
        if self.vol < 0:
            raise ConfigError(f"vol must be >= 0, got {self.vol}")
        if solver in ("fp1", "fp2") and not self.lam / self.alpha < 0.25:
            raise ConfigError(
                f"lambda/alpha = {self.lam / self.alpha:g} must be < 1/4 for the fixed-point solvers"
            )
        return self

    def as_dict(self):
        return asdict(self)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


# Published per-solver parameters for the two synthetic experiments: image 1
# is the one-look (L=1) scene, image 2 the eight-look (L=8) scene.
_PUBLISHED = {
    "levelset": ({"theta": 200.0, "mu": 100.0}, {"theta": 10.0, "mu": 100.0}),
    "sb": ({"lam": 1000.0, "mu": 60.0}, {"lam": 1000.0, "mu": 200.0}),
    "fp1": ({"lam": 1.0, "alpha": 12.0, "mu": 2.0}, {"lam": 1.0, "alpha": 12.0, "mu": 8.0}),
    "fp2": ({"lam": 1.0, "alpha": 12.0, "mu": 1.0}, {"lam": 1.0, "alpha": 12.0, "mu": 4.0}),
}

# One-look overrides used by default_config. On the built-in phantoms the
# published sb and fp1 values for image 1 let single-pixel speckle dominate:
# sb at lam=1000 barely moves away from its initial state and fp1 at mu=2
# keeps speckle islands. A weaker data weight fixes both.
_ONE_LOOK = {
    "sb": {"lam": 5.0, "mu": 1.0},
    "fp1": {"mu": 1.0},
}

_MAX_ITER = {"levelset": 100, "sb": 100, "fp1": 50, "fp2": 50}


def _check(solver, image):
    if solver not in SOLVERS:
        raise ConfigError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    if image not in (1, 2):
        raise ConfigError(f"image must be 1 or 2, got {image}")


def published_config(solver, image=2):
    """Published parameters for ``solver`` on synthetic ``image`` 1 or 2."""
    _check(solver, image)
    return SolverConfig(max_iter=_MAX_ITER[solver], **_PUBLISHED[solver][image - 1])


def default_config(solver, image=2):
    """Recommended parameters: the published ones, with one-look overrides."""
    cfg = published_config(solver, image)
    if image == 1:
        cfg = cfg.replace(**_ONE_LOOK.get(solver, {}))
    return cfg


@dataclass
class SegmentationResult:
    phi: np.ndarray
    mask: np.ndarray
    iterations: int
    seconds: float
    residuals: List[float] = field(default_factory=list)
    converged: bool = False

    @property
    def final_residual(self):
        return self.residuals[-1] if self.residuals else float("nan")
