import json
import os
import subprocess

import pytest

CLI = os.environ.get("OSPCERT_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="OSPCERT_CLI is not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


def test_bad_usage_exits_with_2(tmp_path):
    assert run("rank", "--n-range", "x..y", "--data-dir", str(tmp_path)).returncode == 2
    assert run("frobnicate").returncode == 2


def test_out_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        p = run("verify-certs", "--n", "2", "--out", str(out), "--data-dir", str(tmp_path))
        assert p.returncode == 0, p.stderr
        assert "PASS" in p.stdout
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    ra.pop("timing")
    rb.pop("timing")
    assert ra == rb
    assert ra["command"]["name"] == "verify-certs"


def test_data_dir_from_environment(tmp_path):
    env = dict(os.environ, OSPCERT_DATA_DIR=str(tmp_path))
    p = subprocess.run([CLI, "generate", "--n", "1"], capture_output=True, text=True, env=env)
    assert p.returncode == 0, p.stderr
    assert (tmp_path / "gamma_structures" / "B_0_1.json").exists()
