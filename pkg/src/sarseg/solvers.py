"""Uniform entry point over the four solvers."""

from .config import SOLVERS, ConfigError
from .fixed_point import run_fp1, run_fp2
from .levelset import run_levelset
from .split_bregman import run_sb_lacm


def segment(f, solver, cfg, rect=None):
    """Run ``solver`` on ``f``; ``rect`` only applies to the level set."""
    if solver == "levelset":
        return run_levelset(f, cfg, rect)
    if rect is not None:
        raise ConfigError("an initial rectangle only applies to the levelset solver")
    if solver == "sb":
        return run_sb_lacm(f, cfg)
    if solver == "fp1":
        return run_fp1(f, cfg)
    if solver == "fp2":
        return run_fp2(f, cfg)
    raise ConfigError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
