import csv
import io
import json

import numpy as np
import pytest

from sarseg import pnm
from sarseg.cli import BENCH_HEADER, main
from sarseg.metrics import dsc


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def phantom_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("ph")
    code, _ = run("synth", "--layout", "disk", "--size", 125, "--looks", 1, "--seed", 42, "--out", d)
    assert code == 0
    return d


def test_synth_files(phantom_dir, tmp_path):
    names = sorted(p.name for p in phantom_dir.iterdir())
    assert names == ["clean.pgm", "manifest.json", "observed.pgm", "truth.pgm"]
    manifest = json.loads((phantom_dir / "manifest.json").read_text())
    assert manifest["seed"] == 42 and manifest["looks"] == 1
    run("synth", "--layout", "disk", "--size", 125, "--looks", 1, "--seed", 42, "--out", tmp_path)
    for n in names:
        assert (tmp_path / n).read_bytes() == (phantom_dir / n).read_bytes()


@pytest.mark.parametrize("argv", [["--looks", 0], ["--levels", "1,2,3"], ["--size", 3],
                                  ["--layout", "star"], ["--amplitude", 1.2]])
def test_synth_validation(argv, tmp_path):
    code, _ = run("synth", "--out", tmp_path, *argv)
    assert code == 1


@pytest.mark.parametrize("solver", ["levelset", "sb", "fp1", "fp2"])
def test_segment_end_to_end(solver, phantom_dir, tmp_path):
    code, out = run("segment", phantom_dir / "observed.pgm", "--solver", solver,
                    "--preset", 1, "--out", tmp_path)
    assert code == 0
    fields = dict(kv.split("=") for kv in out.split())
    assert fields["solver"] == solver and int(fields["iterations"]) > 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "mask.pgm", "overlay.ppm", "phi.pgm", "phi.txt"]
    mask = pnm.read_mask(tmp_path / "mask.pgm")
    truth = pnm.read_mask(phantom_dir / "truth.pgm")
    assert dsc(mask, truth) >= 0.94
    raw, _ = pnm.read_raw(tmp_path / "mask.pgm")
    assert set(np.unique(raw)) <= {0, 255}
    assert np.loadtxt(tmp_path / "phi.txt").shape == (125, 125)


def test_segment_guard(phantom_dir, tmp_path):
    code, _ = run("segment", phantom_dir / "observed.pgm", "--solver", "fp1",
                  "--lambda", 1, "--alpha", 2, "--out", tmp_path)
    assert code == 1


def test_segment_max_iter_zero(phantom_dir, tmp_path):
    code, out = run("segment", phantom_dir / "observed.pgm", "--solver", "levelset",
                    "--max-iter", 0, "--init-rect", "10,20,60,90", "--out", tmp_path)
    assert code == 0 and "iterations=0" in out
    expect = np.zeros((125, 125), bool)
    expect[10:60, 20:90] = True
    np.testing.assert_array_equal(pnm.read_mask(tmp_path / "mask.pgm"), expect)


def test_config_file_precedence(phantom_dir, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample\nsolver = fp2\nmax-iter = 2   # cap\nvol = 0\nmu = 4\n")
    code, out = run("segment", phantom_dir / "observed.pgm", "--config", cfg, "--out", tmp_path)
    assert code == 0 and "solver=fp2" in out and "iterations=2" in out
    code, out = run("segment", phantom_dir / "observed.pgm", "--config", cfg,
                    "--max-iter", 3, "--out", tmp_path)
    assert "iterations=3" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("speed = 3\n")
    assert run("segment", phantom_dir / "observed.pgm", "--solver", "sb", "--config", bad)[0] == 1


def test_io_errors(tmp_path):
    assert run("segment", tmp_path / "missing.pgm", "--solver", "sb")[0] == 2
    junk = tmp_path / "junk.pgm"
    junk.write_bytes(b"not an image")
    assert run("segment", junk, "--solver", "sb")[0] == 2
    assert run("segment", junk)[0] == 1  # no solver


def test_metrics_command(phantom_dir, tmp_path):
    truth = phantom_dir / "truth.pgm"
    code, out = run("metrics", truth, truth, phantom_dir / "observed.pgm")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["dsc", "pp"] and float(rows[1][0]) == 1.0
    inv = tmp_path / "inv.pgm"
    m = pnm.read_mask(truth)
    pnm.write_pgm(inv, (~m).astype(np.uint8) * 255)
    _, out = run("metrics", inv, truth, phantom_dir / "observed.pgm")
    assert float(out.splitlines()[1].split(",")[0]) == 0.0
    small = tmp_path / "small.pgm"
    pnm.write_pgm(small, np.zeros((4, 4), np.uint8))
    assert run("metrics", small, truth, phantom_dir / "observed.pgm")[0] == 1


def test_metrics_random_masks_match_library(tmp_path, rng):
    a = rng.uniform(size=(20, 30)) < 0.5
    b = rng.uniform(size=(20, 30)) < 0.3
    img = rng.integers(1, 256, (20, 30)).astype(np.uint8)
    for name, arr in (("a", a.astype(np.uint8) * 255), ("b", b.astype(np.uint8) * 255), ("i", img)):
        pnm.write_pgm(tmp_path / f"{name}.pgm", arr)
    _, out = run("metrics", tmp_path / "a.pgm", tmp_path / "b.pgm", tmp_path / "i.pgm")
    d, _ = (float(v) for v in out.splitlines()[1].split(","))
    assert d == dsc(a, b)


def test_bench_filter_and_format():
    code, out = run("bench", "--solvers", "fp1,fp2", "--size", 64)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0].keys()) == BENCH_HEADER
    assert [(r["solver"], r["image"], r["looks"]) for r in rows] == [
        ("fp1", "1", "1"), ("fp2", "1", "1"), ("fp1", "2", "8"), ("fp2", "2", "8")]
    code2, out2 = run("bench", "--solvers", "fp1,fp2", "--size", 64, "--jobs", 2)
    strip = lambda text: [r[:4] + r[5:] for r in csv.reader(io.StringIO(text))]
    assert strip(out2) == strip(out)
    assert run("bench", "--solvers", "fp9")[0] == 1


def test_bench_default_suite(tmp_path):
    path = tmp_path / "bench.csv"
    assert run("bench", "--out", path, "--jobs", 2)[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 8
    assert all(float(r["dsc"]) >= 0.90 for r in rows)


def test_usage_error():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "sarseg", "synth", "--looks", "0",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 1 and "looks" in proc.stderr
