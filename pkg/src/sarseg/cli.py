"""Command-line driver: ``sarseg synth|segment|metrics|bench``.

Exit codes: 0 on success, 1 for invalid arguments or configuration, 2 for
I/O failures.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import pnm
from .config import SOLVERS, ConfigError, SolverConfig, default_config, published_config
from .levelset import Rect
from .metrics import dsc, pp_uniformity
from .solvers import segment
from .synth import DEFAULT_AMPLITUDE, DEFAULT_LEVELS, LAYOUTS, SHADINGS, make_phantom

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

BENCH_HEADER = ("solver", "image", "looks", "iterations", "seconds", "dsc", "pp")
BENCH_IMAGES = ((1, 1), (2, 8))  # (image, looks)

# flag name -> SolverConfig field
KNOBS = {
    "theta": "theta", "mu": "mu", "nu": "nu", "lambda": "lam", "alpha": "alpha",
    "t": "t", "eps": "eps", "beta": "beta", "sigma": "sigma",
    "kernel_radius": "kernel_radius", "isef_sigma": "isef_sigma",
    "isef_size": "isef_size", "gamma": "gamma", "dt": "dt", "vol": "vol",
    "max_iter": "max_iter",
}
_INT_FIELDS = {"kernel_radius", "isef_size", "max_iter"}
_BOOL_FIELDS = {"eta_literal", "fp_unweighted_shrink"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text, n, name):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"{name} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise ConfigError(f"{name} must be {n} comma-separated integers, got {text!r}")
    return vals


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def read_config_file(path):
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys are config field names or their flag spellings (``lambda``,
    ``max-iter``); ``solver`` and ``preset`` are also accepted.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key in ("solver", "preset"):
                out[key] = value
                continue
            name = KNOBS.get(key, key)
            if name not in SolverConfig.field_names():
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                if name in _BOOL_FIELDS:
                    out[name] = _parse_bool(value)
                elif name in _INT_FIELDS:
                    out[name] = int(value)
                else:
                    out[name] = float(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return out


def _build_parser():
    p = _Parser(prog="sarseg", description="Speckled-image segmentation with local statistics.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("synth", help="generate a speckled phantom")
    s.add_argument("--layout", choices=LAYOUTS, default="disk")
    s.add_argument("--size", type=int, default=125)
    s.add_argument("--levels", default=",".join(f"{v:g}" for v in DEFAULT_LEVELS),
                   help="background,foreground gray levels in (0, 255]")
    s.add_argument("--shading", choices=SHADINGS, default="ramp")
    s.add_argument("--amplitude", type=float, default=DEFAULT_AMPLITUDE)
    s.add_argument("--looks", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=".", help="output directory")

    g = sub.add_parser("segment", help="segment an image")
    g.add_argument("input")
    g.add_argument("--solver", choices=SOLVERS)
    g.add_argument("--out", default=".", help="output directory")
    g.add_argument("--config", help="key = value parameter file")
    g.add_argument("--preset", type=int, choices=(1, 2),
                   help="parameter set: 1 for one-look scenes, 2 (default) for multi-look")
    g.add_argument("--published", action="store_true",
                   help="use the published parameters without one-look overrides")
    g.add_argument("--init-rect", help="levelset start box top,left,bottom,right")
    for flag, name in KNOBS.items():
        kind = int if name in _INT_FIELDS else float
        g.add_argument("--" + flag.replace("_", "-"), dest=name, type=kind, default=None)
    g.add_argument("--eta-literal", dest="eta_literal", action="store_const", const=True)
    g.add_argument("--fp-unweighted-shrink", dest="fp_unweighted_shrink",
                   action="store_const", const=True)

    m = sub.add_parser("metrics", help="DSC and PP of a mask against a reference")
    m.add_argument("cs", help="computed mask")
    m.add_argument("gt", help="reference mask")
    m.add_argument("image")
    m.add_argument("--unnormalized-pp", action="store_true", help="use C = 1 in PP")

    b = sub.add_parser("bench", help="solver comparison table on built-in phantoms")
    b.add_argument("--solvers", default=",".join(SOLVERS))
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--size", type=int, default=125)
    b.add_argument("--layout", choices=LAYOUTS, default="disk")
    b.add_argument("--out", help="CSV path (default: stdout)")
    return p


def resolve_config(args):
    """Merge defaults < config file < flags; returns ``(solver, cfg)``."""
    file_vals = read_config_file(args.config) if args.config else {}
    solver = args.solver or file_vals.pop("solver", None)
    file_vals.pop("solver", None)
    if solver is None:
        raise ConfigError("no solver given (use --solver or 'solver =' in the config file)")
    if solver not in SOLVERS:
        raise ConfigError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    preset = args.preset or int(file_vals.pop("preset", 2))
    file_vals.pop("preset", None)
    if preset not in (1, 2):
        raise ConfigError(f"preset must be 1 or 2, got {preset}")
    cfg = (published_config if args.published else default_config)(solver, preset)
    cfg = cfg.replace(**file_vals)
    flags = {n: getattr(args, n) for n in SolverConfig.field_names()
             if getattr(args, n, None) is not None}
    cfg = cfg.replace(**flags)
    cfg.validate(solver)
    return solver, cfg


def cmd_synth(args, out=sys.stdout):
    levels = [float(v) for v in args.levels.split(",")] if args.levels else None
    if levels is None or len(levels) != 2:
        raise ConfigError(f"--levels needs two values, got {args.levels!r}")
    if args.size < 8:
        raise ConfigError(f"--size must be >= 8, got {args.size}")
    ph = make_phantom(args.layout, args.size, tuple(levels), args.shading,
                      args.amplitude, args.looks, args.seed)
    os.makedirs(args.out, exist_ok=True)
    scale = 65535.0 / ph.observed.max()
    obs16 = np.maximum(np.rint(ph.observed * scale), 1).astype(np.uint16)
    pnm.write_pgm(os.path.join(args.out, "observed.pgm"), obs16)
    pnm.write_pgm(os.path.join(args.out, "clean.pgm"),
                  np.clip(np.rint(ph.clean), 1, 255).astype(np.uint8))
    pnm.write_pgm(os.path.join(args.out, "truth.pgm"), ph.truth_mask.astype(np.uint8) * 255)
    manifest = dict(ph.params, observed_scale=scale,
                    files=["observed.pgm", "clean.pgm", "truth.pgm"])
    with open(os.path.join(args.out, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote phantom to {args.out}", file=out)


def cmd_segment(args, out=sys.stdout):
    solver, cfg = resolve_config(args)
    rect = None
    if args.init_rect:
        if solver != "levelset":
            raise ConfigError("--init-rect only applies to the levelset solver")
        rect = Rect(*_int_list(args.init_rect, 4, "--init-rect"))
    f = pnm.read_image(args.input)
    res = segment(f, solver, cfg, rect)
    os.makedirs(args.out, exist_ok=True)
    pnm.write_pgm(os.path.join(args.out, "mask.pgm"), res.mask.astype(np.uint8) * 255)
    if solver == "levelset":
        phi8 = pnm.to_uint8(res.phi)
    else:
        phi8 = pnm.to_uint8(res.phi, 0.0, 1.0)
    pnm.write_pgm(os.path.join(args.out, "phi.pgm"), phi8)
    pnm.save_matrix(os.path.join(args.out, "phi.txt"), res.phi)
    pnm.write_ppm(os.path.join(args.out, "overlay.ppm"),
                  pnm.overlay(pnm.to_uint8(f, 0.0, 255.0), res.mask))
    print(f"solver={solver} iterations={res.iterations} seconds={res.seconds:.4f} "
          f"residual={res.final_residual:.6g}", file=out)


def cmd_metrics(args, out=sys.stdout):
    cs = pnm.read_mask(args.cs)
    gt = pnm.read_mask(args.gt)
    f = pnm.read_image(args.image)
    if not cs.shape == gt.shape == f.shape:
        raise ConfigError(f"shape mismatch: cs {cs.shape}, gt {gt.shape}, image {f.shape}")
    pp = pp_uniformity(f, cs, normalize=not args.unnormalized_pp)
    print("dsc,pp", file=out)
    print(f"{dsc(cs, gt)!r},{pp!r}", file=out)


def bench_row(job):
    """Run one (solver, image) cell of the benchmark; pure given ``job``."""
    solver, image, looks, seed, size, layout = job
    ph = make_phantom(layout, size, looks=looks, seed=seed)
    res = segment(ph.observed, solver, default_config(solver, image))
    try:
        pp = pp_uniformity(ph.observed, res.mask)
    except ValueError:
        pp = float("nan")
    try:
        score = dsc(res.mask, ph.truth_mask)
    except ValueError:
        score = float("nan")
    return (solver, image, looks, res.iterations, round(res.seconds, 4),
            round(score, 6), round(pp, 6))


def run_bench(solvers, seed=1, size=125, layout="disk", jobs=1):
    unknown = [s for s in solvers if s not in SOLVERS]
    if unknown or not solvers:
        raise ConfigError(f"unknown solver(s) {unknown}; expected a subset of {SOLVERS}")
    work = [(s, image, looks, seed, size, layout)
            for image, looks in BENCH_IMAGES for s in solvers]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(bench_row, work))
    else:
        rows = [bench_row(w) for w in work]
    order = {s: i for i, s in enumerate(SOLVERS)}
    return sorted(rows, key=lambda r: (r[1], order[r[0]]))


def cmd_bench(args, out=sys.stdout):
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {args.jobs}")
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    rows = run_bench(solvers, args.seed, args.size, args.layout, args.jobs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    w.writerows(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())


COMMANDS = {"synth": cmd_synth, "segment": cmd_segment, "metrics": cmd_metrics, "bench": cmd_bench}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except (UsageError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
