import os
import subprocess

import pytest

CLI = os.environ.get("MONGE_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="MONGE_CLI not set")


def run(*args, stdin=None):
    return subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True)


def test_generated_matrix_passes_check(tmp_path):
    path = tmp_path / "a.txt"
    assert run("gen", "--kind", "lines", "--rows", "3", "--cols", "4", "--seed", "1", "-o", str(path)).returncode == 0
    assert path.read_text().splitlines()[0] == "3 4"
    r = run("check", str(path))
    assert (r.returncode, r.stdout) == (0, "OK\n")


def test_check_reports_violation(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n0 1\n1 0\n")
    r = run("check", str(path))
    assert (r.returncode, r.stdout) == (1, "VIOLATION 1 1\n")


def test_malformed_file_names_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 x\n3 4\n")
    r = run("check", str(path))
    assert r.returncode == 2
    assert "line 2" in r.stderr


def test_query_modes(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("3 3\n1 2 3\n2 4 6\n3 6 9\n")
    assert run("query", str(path), "--rect", "1", "2", "1", "3").stdout == "2 3 6\n"
    assert run("query", str(path), "--col", "2", "--rows", "1", "3").stdout == "3 2 6\n"
    assert run("query", str(path), "--batch", "-", stdin="1 1 1 1\n3 3 3 3\n").stdout == "1 1 1\n3 3 9\n"
    assert run("query", str(path), "--rect", "1", "4", "1", "1").returncode == 2


def test_partial_query_reports_none(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("2 3\n5 6 *\n4 * *\n")
    assert run("query", str(path), "--rect", "2", "2", "2", "3").stdout == "none\n"
    assert run("query", str(path), "--rect", "1", "2", "1", "3").stdout == "1 2 6\n"


def test_pred_on_worked_example(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("\n".join(map(str, [3, 18, 21, 22, 42, 46, 57, 60])) + "\n")
    for via in ("monge", "direct", "reduced"):
        assert run("pred", "--set", str(path), "--x", "20", "--via", via).stdout == "18\n"
    assert run("pred", "--set", str(path), "--x", "2").stdout == "none\n"


@pytest.mark.parametrize("index", ["submatrix-linear", "staircase-linear", "partial-basic", "subcolumn-two-level"])
def test_fuzz(index):
    r = run("fuzz", "--index", index, "--n", "24", "--cases", "20", "--seed", "7")
    assert (r.returncode, r.stdout) == (0, "OK 20/20\n")


def test_bench_csv(tmp_path):
    out = tmp_path / "b.csv"
    r = run("bench", "--n", "64", "128", "--index", "submatrix-linear", "submatrix-basic", "--queries", "200",
            "-o", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,kind,build_ns,words,q_p50_ns,q_p99_ns,probes_mean"
    assert len(lines) == 5


def test_usage_errors():
    assert run().returncode == 2
    assert run("fuzz", "--index", "nope").returncode == 2
