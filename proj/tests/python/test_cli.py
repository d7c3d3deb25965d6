import json
import os
import shutil
import subprocess

import pytest

CLI = os.environ.get("SPACELAB_CLI") or shutil.which("spacelab")
pytestmark = pytest.mark.skipif(CLI is None, reason="spacelab CLI not built")


def run(*args, env=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def test_count_prints_seven():
    r = run("lang", "count", "--spec", "multiples2.json", "--n", "4", "--mode", "naive")
    assert r.returncode == 0
    assert r.stdout == "7\n"


def test_delta_witness_verifies(tmp_path):
    r = run("detect", "delta", "--spec", "squares.json", "--depth", "3", "--bound", "100",
            "--verify", "--out", str(tmp_path))
    assert r.returncode == 0
    assert r.stdout.rstrip().endswith("verified")
    witness = json.loads((tmp_path / "witness.json").read_text())
    assert witness["witness"]["S"] == [1, 10, 26]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["spec_digest"] and manifest["parameters"]["budget"] > 0
    again = run("detect", "verify", "--spec", "squares.json",
                "--witness", str(tmp_path / "witness.json"))
    assert again.returncode == 0 and again.stdout == "verified\n"


def test_periodic_point():
    r = run("dyn", "periodic", "--spec", "multiples3.json", "--k", "3", "--horizon", "30")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["admissible"] is True
    assert out["point"]["word"] == "100" * 10


def test_exit_codes():
    bad = run("lang", "count", "--spec", '{"type":"bogus"}', "--n", "4")
    assert bad.returncode == 2
    assert json.loads(bad.stderr)["error"] == "validation"
    assert run("lang", "count", "--spec", "squares.json", "--n", "4", "--nope").returncode == 2
    env = dict(os.environ, SPACELAB_BUDGET="50")
    tight = run("lang", "count", "--spec", "complement_squares.json", "--n", "64", env=env)
    assert tight.returncode == 3
    assert json.loads(tight.stderr)["error"] == "budget_exhausted"


def test_entropy_csv_is_deterministic(tmp_path):
    args = ("lang", "entropy", "--spec", "complement_squares.json", "--n-grid", "8,16,24")
    a = run(*args, "--out", str(tmp_path / "a"))
    b = run(*args, "--out", str(tmp_path / "b"))
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stdout.splitlines()[0] == "n,c_n,h_n,omega_n,omega_over_n"
    assert (tmp_path / "a" / "entropy.csv").read_bytes() == (tmp_path / "b" / "entropy.csv").read_bytes()


def test_exp_run(tmp_path):
    r = run("exp", "run", "zero-entropy-proximal", "--params",
            '{"members": ["complement_multiples2"], "block_max": 32}', "--out", str(tmp_path))
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "consistent"
    assert (tmp_path / "zero-entropy-proximal.csv").exists()
