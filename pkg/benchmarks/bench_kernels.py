"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--size 125] [--repeat 20]

Prints one CSV row per kernel with the best time of each backend and the
speed-up, after checking that both backends return identical arrays.
"""

import argparse
import timeit

import numpy as np

from sarseg import _fallback
from sarseg.config import published_config
from sarseg.filters import gaussian_kernel, isef_kernel
from sarseg.split_bregman import run_sb_lacm
from sarseg.synth import make_phantom

try:
    from sarseg import _kernels
except ImportError:
    _kernels = None


def cases(size, rng):
    f = rng.uniform(1, 255, (size, size))
    phi = rng.uniform(size=(size, size))
    rhs = rng.normal(0, 0.1, (size, size))
    g = gaussian_kernel(15.0).factors[0]
    isef = isef_kernel().factors[0]
    small = isef_kernel(1.2, 7).weights
    scene = make_phantom(size=size, looks=8, seed=1).observed
    cfg = published_config("sb", 2)
    return {
        "gs_sweep": lambda m: m.gs_sweep(phi.copy(), rhs),
        "correlate_rows_sigma15": lambda m: m.correlate_rows(f, g),
        "correlate_cols_sigma15": lambda m: m.correlate_cols(f, g),
        "correlate_rows_isef": lambda m: m.correlate_rows(f, isef),
        "correlate_direct_7x7": lambda m: m.correlate_direct(f, small),
        # whole solver; only the sweep backend is switched here
        "sb_run_sweep_only": lambda m: run_sb_lacm(scene, cfg, impl=m).phi,
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=125)
    p.add_argument("--repeat", type=int, default=10)
    args = p.parse_args(argv)
    if _kernels is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    rng = np.random.default_rng(0)
    print("kernel,size,python_ms,cython_ms,speedup")
    for name, fn in cases(args.size, rng).items():
        if not np.array_equal(fn(_fallback), fn(_kernels)):
            raise SystemExit(f"{name}: backends disagree")
        tp = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name},{args.size},{tp * 1e3:.3f},{tc * 1e3:.3f},{tp / tc:.1f}")


if __name__ == "__main__":
    main()
