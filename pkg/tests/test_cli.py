import json
import subprocess
import sys

import pytest

from covmod.jsonio import group_id
from covmod import make_cyclic


def run(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "covmod", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture()
def z4_file(tmp_path):
    res = run("group", "make", "cyclic", "4", "--out", str(tmp_path / "z4.json"))
    assert res.returncode == 0, res.stderr
    return tmp_path / "z4.json"


def test_group_make_and_show(z4_file):
    doc = json.loads(z4_file.read_text())
    assert doc["order"] == 4
    res = run("group", "show", str(z4_file))
    assert res.returncode == 0
    assert "order   4" in res.stdout
    assert "abelian yes" in res.stdout


def test_group_make_weyl_heisenberg(tmp_path):
    out = tmp_path / "wh.json"
    res = run("group", "make", "weyl-heisenberg", "2", "4", "--out", str(out))
    assert res.returncode == 0
    assert json.loads(out.read_text())["order"] == 16
    res = run("group", "make", "weyl-heisenberg", "2", "3")
    assert res.returncode == 2
    assert "error:" in res.stderr


def test_group_make_table_from_bare_array(tmp_path):
    t = tmp_path / "t.json"
    t.write_text(json.dumps([[0, 1], [1, 0]]))
    res = run("group", "make", "table", str(t))
    assert res.returncode == 0
    assert json.loads(res.stdout)["order"] == 2


def test_group_make_semidirect(tmp_path):
    z2 = tmp_path / "z2.json"
    z3 = tmp_path / "z3.json"
    act = tmp_path / "act.json"
    assert run("group", "make", "cyclic", "2", "--out", str(z2)).returncode == 0
    assert run("group", "make", "cyclic", "3", "--out", str(z3)).returncode == 0
    act.write_text(json.dumps([[0, 1, 2], [0, 2, 1]]))
    res = run("group", "make", "semidirect", str(z2), str(z3), str(act))
    assert res.returncode == 0
    assert json.loads(res.stdout)["order"] == 6


def test_chars_list(z4_file):
    res = run("chars", "list", str(z4_file), "--members", "0,2")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["phases"] == [[0, 1], [1, 2]]


def test_txi_conv_modact_norm_flow(tmp_path, z4_file):
    gid = group_id(make_cyclic(4))
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"group": gid, "values": [[1, 0], [0, 0], [0, 0], [0, 0]]}))
    psi = tmp_path / "psi.json"
    res = run(
        "txi", str(z4_file), str(f),
        "--members", "0,2", "--char-index", "1", "--out", str(psi),
    )
    assert res.returncode == 0, res.stderr
    doc = json.loads(psi.read_text())
    assert doc["section"] == [[1.0, 0.0], [0.0, 0.0]]

    d1 = tmp_path / "d1.json"
    d1.write_text(json.dumps({"group": gid, "values": [[0, 0], [1, 0], [0, 0], [0, 0]]}))
    res = run("conv", str(z4_file), str(d1), str(d1))
    assert res.returncode == 0
    assert json.loads(res.stdout)["values"] == [[0, 0], [0, 0], [1, 0], [0, 0]]

    res = run("modact", str(z4_file), str(d1), str(psi))
    assert res.returncode == 0
    assert json.loads(res.stdout)["section"] == [[0, 0], [1, 0]]


def test_norm_prints_seventeen_digits(tmp_path, z4_file):
    gid = group_id(make_cyclic(4))
    psi = tmp_path / "psi.json"
    psi.write_text(
        json.dumps(
            {
                "group": gid,
                "normal": [0, 2],
                "character": [[0, 1], [1, 2]],
                "section": [[1, 0], [0, 2]],
            }
        )
    )
    res = run("norm", str(z4_file), str(psi), "--p", "2")
    assert res.returncode == 0
    assert res.stdout.strip() == "2.2360679774997898"
    assert float(res.stdout) == 5.0 ** 0.5

    f = tmp_path / "f.json"
    f.write_text(json.dumps({"group": gid, "values": [[3, 0], [0, 4], [0, 0], [0, 0]]}))
    res = run("norm", str(z4_file), str(f), "--p", "2")
    assert res.stdout.strip() == "5"


def test_verify_subset_passes(tmp_path):
    out = tmp_path / "report.json"
    res = run(
        "verify", "--trials", "2", "--corpus", "Z4/evens,S3/A3", "--out", str(out)
    )
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["corpus"] == ["Z4/evens", "S3/A3"]
    assert json.loads(res.stdout)["passed"] is True


def test_verify_zero_tolerance_fails():
    res = run("verify", "--trials", "1", "--tol", "0", "--corpus", "Z4/evens")
    assert res.returncode == 1
    assert json.loads(res.stdout)["passed"] is False


def test_verify_unknown_corpus_is_usage_error():
    res = run("verify", "--corpus", "nope")
    assert res.returncode == 2
    assert "unknown corpus entries" in res.stderr


def test_bench_runs_and_prints_table():
    res = run("bench", "1", "1", "--repetitions", "2")
    assert res.returncode == 0
    assert "speedup" in res.stdout
    res = run("bench", "2", "2", "--repetitions", "2", "--json")
    assert res.returncode == 0
    assert len(json.loads(res.stdout)["variants"]) == 2


def test_missing_file_is_exit_two():
    res = run("group", "show", "no-such-file.json")
    assert res.returncode == 2
    assert "error:" in res.stderr


def test_bad_usage_is_exit_two():
    res = run("group")
    assert res.returncode == 2
