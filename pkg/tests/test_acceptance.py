"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them at the end of the session. Run ``python3 tests/test_acceptance.py`` to
execute the suite standalone.
"""

import math
import time

import numpy as np
import pytest

from oracles import correlate_loop, dsc_loop, pp_loop
from sarseg.config import default_config, published_config
from sarseg.filters import Kernel2D, convolve, gaussian_kernel, isef_kernel
from sarseg.fixed_point import run_fp1, run_fp2, wrof_iterates, wrof_objective
from sarseg.grid import GradPair, div_adjoint, grad_forward, inner, zeros_like_pair
from sarseg.levelset import run_levelset
from sarseg.metrics import dsc, pp_uniformity
from sarseg.split_bregman import (SBState, run_sb_lacm, sb_bregman_update, sb_d_update,
                                  sb_objective, sb_phi_update, shrink, shrink_complement)
from sarseg.synth import gamma_speckle, make_phantom, noise_free

RESULTS = {}
RUNNERS = {"levelset": run_levelset, "sb": run_sb_lacm, "fp1": run_fp1, "fp2": run_fp2}
CONVEX = ("sb", "fp1", "fp2")


def record(num, ok, detail):
    RESULTS[num] = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


def test_criterion_1_operators():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst_adj = 0.0
    for _ in range(120):
        h, w = (int(v) for v in rng.integers(2, 17, 2))
        u = rng.normal(size=(h, w))
        v = GradPair(rng.normal(size=(h, w)), rng.normal(size=(h, w)))
        gx, gy = grad_forward(u)
        lhs = inner(gx, v.gx) + inner(gy, v.gy)
        rhs = inner(u, div_adjoint(v))
        worst_adj = max(worst_adj, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    worst_conv = 0.0
    for i in range(24):
        f = rng.normal(size=tuple(int(v) for v in rng.integers(3, 13, 2)))
        if i % 3 == 0:
            k = gaussian_kernel(float(rng.uniform(0.5, 3)), int(rng.integers(1, 4)))
        elif i % 3 == 1:
            k = isef_kernel(float(rng.uniform(0.5, 2)), int(2 * rng.integers(0, 4) + 1))
        else:
            raw = rng.uniform(size=(int(2 * rng.integers(0, 3) + 1), int(2 * rng.integers(0, 3) + 1)))
            k = Kernel2D(raw / raw.sum())
        worst_conv = max(worst_conv, np.max(np.abs(convolve(f, k) - correlate_loop(f, k.weights))))
    elapsed = time.perf_counter() - t0
    ok = worst_adj <= 1e-10 and worst_conv <= 1e-12 and elapsed < 10
    record(1, ok, f"adjoint rel err {worst_adj:.1e} (120 pairs), convolution err "
                  f"{worst_conv:.1e} (24 pairs), {elapsed:.2f}s")
    assert ok


def _shrink_counts():
    rng = np.random.default_rng(2)
    n = 10**5
    x = rng.normal(0, 2, n) * 10.0 ** rng.integers(-3, 4, n)
    theta = rng.uniform(0, 2, n) * 10.0 ** rng.integers(-3, 4, n)
    s = shrink(x, theta)
    c = shrink_complement(x, theta)
    sum_bad = int(np.sum(s + c != x))
    clamp_bad = int(np.sum(c != np.sign(x) * np.minimum(np.abs(x), theta)))
    ulp_bad = int(np.sum(np.abs(s + c - x) > np.spacing(np.abs(x))))
    return n, sum_bad, clamp_bad, ulp_bad


@pytest.mark.xfail(strict=True, reason="exact float identity is unattainable; see notes")
def test_criterion_2_shrink_algebra():
    n, sum_bad, clamp_bad, ulp_bad = _shrink_counts()
    ok = sum_bad == 0 and clamp_bad == 0
    record(2, ok, f"shrink+(I-shrink)==x fails on {sum_bad}/{n} pairs (all within 1 ulp: "
                  f"{ulp_bad == 0}); (I-shrink)==sgn*min fails on {clamp_bad}/{n}")
    assert ok


def test_criterion_2_attainable_parts():
    n, _, clamp_bad, ulp_bad = _shrink_counts()
    assert clamp_bad == 0 and ulp_bad == 0


def _sb_worst(seed, n=16, outer=25):
    r = np.random.default_rng(seed)
    phi = r.uniform(size=(n, n))
    eta = r.normal(size=(n, n))
    g = r.uniform(0.05, 1.0, (n, n))
    lam = float(r.choice([1.0, 5.0, 1000.0]))
    mu = float(r.uniform(0.01, 0.5)) * lam
    z = zeros_like_pair(phi)
    s = SBState(phi, z, z, None, 0)
    worst = -np.inf
    for k in range(outer):
        e0 = sb_objective(s.phi, s.d, s.b, g, eta, mu, lam)
        p = sb_phi_update(s, eta, mu, lam)
        d = sb_d_update(p, s.b, g, lam)
        e1 = sb_objective(p, d, s.b, g, eta, mu, lam)
        worst = max(worst, e1 - e0)
        s = SBState(p, d, sb_bregman_update(s.b, p, d), None, k + 1)
    # with the Bregman variable held at zero the iteration is plain block descent
    s = SBState(phi, z, z, None, 0)
    prev = sb_objective(phi, z, z, g, eta, mu, lam)
    for _ in range(outer):
        p = sb_phi_update(s, eta, mu, lam)
        d = sb_d_update(p, z, g, lam)
        e = sb_objective(p, d, z, g, eta, mu, lam)
        worst = max(worst, e - prev)
        prev = e
        s = SBState(p, d, z, None, 0)
    return worst


def _fp1_worst(seed, n=16, iters=60):
    r = np.random.default_rng(seed)
    phi = r.uniform(size=(n, n))
    eta = r.normal(size=(n, n))
    g = r.uniform(0.05, 1.0, (n, n))
    mu, alpha, lam = float(r.uniform(0.5, 8)), 12.0, 1.0
    center = phi - mu * eta / alpha
    e = [wrof_objective(p, center, g, alpha)
         for p in wrof_iterates(center, g, lam, alpha, 1e-5, iters, phi0=phi)]
    return max(np.diff(e))


def test_criterion_3_energy_descent():
    sb = max(_sb_worst(seed) for seed in range(24))
    fp = max(_fp1_worst(seed) for seed in range(24))
    ok = sb <= 1e-8 and fp <= 1e-8
    record(3, ok, f"largest objective increase: sb {sb:.1e}, fp1 {fp:.1e} (24 instances each)")
    assert ok


def test_criterion_4_noise_model():
    n = 10**6
    lines = []
    ok = True
    for looks in (1, 4, 8):
        x = gamma_speckle(1000, 1000, looks, 100 + looks)
        var = 1.0 / looks
        sd_mean = math.sqrt(var / n)
        sd_var = var * math.sqrt((2.0 + 6.0 / looks) / n)
        m, v = float(x.mean()), float(x.var())
        good = abs(m - 1) <= 3 * sd_mean and abs(v - var) <= 3 * sd_var
        ok &= good
        lines.append(f"L={looks} mean {m:.4f} var {v:.4f}")
    record(4, ok, "; ".join(lines))
    assert ok


def test_criterion_5_end_to_end_dsc():
    t0 = time.perf_counter()
    parts = []
    ok = True
    clean = noise_free()
    for s, run in RUNNERS.items():
        # speckle-free scenes run with the one-look parameter set
        d = dsc(run(clean.observed, default_config(s, 1)).mask, clean.truth_mask)
        ok &= d >= 0.99
        parts.append(f"clean {s} {d:.4f}")
    for looks, image, bound in ((1, 1, 0.94), (8, 2, 0.95)):
        for s in CONVEX:
            scores = []
            for seed in (1, 2, 3):
                ph = make_phantom(looks=looks, seed=seed)
                scores.append(dsc(RUNNERS[s](ph.observed, default_config(s, image)).mask,
                                  ph.truth_mask))
            ok &= min(scores) >= bound
            parts.append(f"L{looks} {s} min {min(scores):.4f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    record(5, ok, ", ".join(parts) + f"; {elapsed:.1f}s")
    assert ok


def test_criterion_6_convergence_economy():
    ph = make_phantom(looks=8, seed=1)
    iters, secs = {}, {}
    for s in CONVEX:
        cfg = published_config(s, 2)
        runs = [RUNNERS[s](ph.observed, cfg) for _ in range(3)]
        iters[s] = runs[0].iterations
        secs[s] = min(r.seconds for r in runs)
    ok = (iters["fp1"] <= 10 and iters["fp2"] <= 10 and iters["sb"] <= 60
          and secs["fp1"] < secs["sb"] and secs["fp2"] < secs["sb"])
    record(6, ok, ", ".join(f"{s} {iters[s]} it {secs[s]:.3f}s" for s in CONVEX))
    assert ok


def test_criterion_7_metric_oracles():
    rng = np.random.default_rng(7)
    worst_d = worst_p = 0.0
    exact = True
    for _ in range(50):
        shape = tuple(int(v) for v in rng.integers(2, 12, 2))
        a = rng.uniform(size=shape) < rng.uniform(0.1, 0.9)
        b = rng.uniform(size=shape) < rng.uniform(0.1, 0.9)
        a.flat[0], a.flat[-1] = True, False
        b.flat[0] = True
        f = rng.uniform(0, 255, shape)
        worst_d = max(worst_d, abs(dsc(a, b) - dsc_loop(a, b)))
        worst_p = max(worst_p, abs(pp_uniformity(f, a) - pp_loop(f, a)))
        exact &= dsc(a, b) == dsc(b, a) and dsc(a, a) == 1.0 and dsc(b, b) == 1.0
    ok = worst_d <= 1e-12 and worst_p <= 1e-12 and exact
    record(7, ok, f"dsc err {worst_d:.1e}, pp err {worst_p:.1e}, symmetry/self exact: {exact}")
    assert ok


def test_criterion_8_scale_invariance():
    ph = make_phantom(looks=8, seed=1)
    same = {}
    for s in CONVEX:
        cfg = default_config(s, 2)
        same[s] = np.array_equal(RUNNERS[s](ph.observed, cfg).mask,
                                 RUNNERS[s](3.0 * ph.observed, cfg).mask)
    ok = all(same.values())
    record(8, ok, ", ".join(f"{s} masks equal: {v}" for s, v in same.items()))
    assert ok


def test_criterion_9_determinism():
    ph = make_phantom(looks=8, seed=5)
    same = {}
    for s, run in RUNNERS.items():
        cfg = default_config(s, 2)
        a, b = run(ph.observed, cfg), run(ph.observed, cfg)
        same[s] = (a.phi.tobytes() == b.phi.tobytes() and np.array_equal(a.mask, b.mask)
                   and a.iterations == b.iterations and a.residuals == b.residuals)
    ok = all(same.values())
    record(9, ok, ", ".join(f"{s} identical: {v}" for s, v in same.items()))
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
