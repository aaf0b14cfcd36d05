"""Fixed-point solvers that reduce each outer step to a weighted ROF problem.

Both solvers keep per-axis dual variables ``b`` updated by the relaxed
fixed-point map

    b <- t * b + (1 - t) * (I - shrink_{g/lam})(grad phi + b)

and read ``phi`` back through ``Dx^T bx + Dy^T by``. ``fp1`` adds a proximal
term around the current ``phi``; ``fp2`` splits off an auxiliary copy of
``phi`` carrying the data term, with a Bregman variable ``c``.
"""

import time
from typing import NamedTuple, Optional

import numpy as np

from .config import ConfigError, SegmentationResult
from .grid import GradPair, clip01, div_adjoint, grad_forward, zeros_like_pair
from .localstats import RegionStats, eta_field, update_region_means
from .model import prepare, residual
from .split_bregman import shrink_complement


class FPState(NamedTuple):
    phi: np.ndarray
    b: GradPair
    stats: RegionStats
    c: Optional[np.ndarray] = None
    iter: int = 0


def _check_ratio(lam, alpha):
    if not (alpha > 0 and lam > 0 and lam / alpha < 0.25):
        raise ConfigError(f"need lam > 0, alpha > 0 and lam/alpha < 1/4, got {lam}/{alpha}")


def fp_b_update(phi, b_prev, t, lam, g=None):
    """Relaxed dual update; ``g=None`` thresholds at the unweighted ``1/lam``."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    thr = (1.0 if g is None else np.asarray(g)) / lam
    gx, gy = grad_forward(phi)
    bx = t * b_prev.gx + (1.0 - t) * shrink_complement(gx + b_prev.gx, thr)
    by = t * b_prev.gy + (1.0 - t) * shrink_complement(gy + b_prev.gy, thr)
    return GradPair(bx, by)


def fp1_phi_update(phi, eta, b, mu, alpha, lam):
    _check_ratio(lam, alpha)
    return clip01(phi - mu * np.asarray(eta) / alpha - (lam / alpha) * div_adjoint(b))


def fp2_varphi_update(phi, c_prev, eta, mu, alpha):
    """Data-term step: returns the clamped auxiliary field and the new ``c``."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    varphi = clip01(phi - c_prev - (mu / alpha) * np.asarray(eta))
    return varphi, c_prev + varphi - phi


def fp2_phi_update(phi, c, b, alpha, lam):
    # clamped to keep phi in the relaxed box
    _check_ratio(lam, alpha)
    return clip01(phi + c - (lam / alpha) * div_adjoint(b))


def wrof_objective(phi, center, g, alpha):
    """``|Dx phi|_g + |Dy phi|_g + alpha/2 |phi - center|^2`` by direct summation."""
    gx, gy = grad_forward(phi)
    return float(np.sum(g * np.abs(gx)) + np.sum(g * np.abs(gy))
                 + 0.5 * alpha * np.sum((phi - center) ** 2))


def wrof_iterates(center, g, lam, alpha, t, n, phi0=None, b0=None):
    """Run ``n`` fixed-point iterations on one weighted ROF problem.

    ``center`` is held fixed (for the proximal step it is
    ``phi_k - mu * eta / alpha``). Yields each ``phi`` starting with ``phi0``,
    which defaults to ``clip01(center)``.
    """
    _check_ratio(lam, alpha)
    phi = clip01(center) if phi0 is None else phi0
    b = zeros_like_pair(phi) if b0 is None else b0
    yield phi
    for _ in range(n):
        b = fp_b_update(phi, b, t, lam, g)
        phi = clip01(center - (lam / alpha) * div_adjoint(b))
        yield phi


def _threshold_field(cfg, g):
    return None if cfg.fp_unweighted_shrink else g


def fp1_iterate(state, f, g, kernel, cfg):
    eta = eta_field(f, state.stats, kernel, cfg.eta_literal)
    b = fp_b_update(state.phi, state.b, cfg.t, cfg.lam, _threshold_field(cfg, g))
    phi = fp1_phi_update(state.phi, eta, b, cfg.mu, cfg.alpha, cfg.lam)
    stats = update_region_means(f, phi, kernel)
    return FPState(phi, b, stats, None, state.iter + 1)


def fp2_iterate(state, f, g, kernel, cfg):
    eta = eta_field(f, state.stats, kernel, cfg.eta_literal)
    _, c = fp2_varphi_update(state.phi, state.c, eta, cfg.mu, cfg.alpha)
    b = fp_b_update(state.phi, state.b, cfg.t, cfg.lam, _threshold_field(cfg, g))
    phi = fp2_phi_update(state.phi, c, b, cfg.alpha, cfg.lam)
    stats = update_region_means(f, phi, kernel)
    return FPState(phi, b, stats, c, state.iter + 1)


def _run(f, cfg, solver, step):
    cfg.validate(solver)
    t0 = time.perf_counter()
    f, kernel, g = prepare(f, cfg)
    phi = f / f.max()
    c = np.zeros_like(phi) if solver == "fp2" else None
    state = FPState(phi, zeros_like_pair(phi), update_region_means(f, phi, kernel), c, 0)
    residuals = []
    converged = False
    while state.iter < cfg.max_iter:
        prev = state.phi
        state = step(state, f, g, kernel, cfg)
        residuals.append(residual(state.phi, prev))
        if residuals[-1] < cfg.vol:
            converged = True
            break
    return SegmentationResult(
        phi=state.phi,
        mask=state.phi > cfg.gamma,
        iterations=state.iter,
        seconds=time.perf_counter() - t0,
        residuals=residuals,
        converged=converged,
    )


def run_fp1(f, cfg):
    """Proximal fixed-point solver; mask is ``{phi > gamma}``."""
    return _run(f, cfg, "fp1", fp1_iterate)


def run_fp2(f, cfg):
    """Split fixed-point solver with Bregman variable ``c``."""
    return _run(f, cfg, "fp2", fp2_iterate)
