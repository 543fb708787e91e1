from __future__ import annotations

import subprocess
import sys

import pytest

from rmatrix import catalog, io
from rmatrix.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_then_verify_cybe(tmp_path, capsys):
    path = tmp_path / "cusp.json"
    assert run(["compute", "--curve", "cuspidal", "--n", "2", "--out", str(path)], capsys)[0] == 0
    code, out, _ = run(["verify", "--in", str(path), "--identity", "cybe"], capsys)
    assert code == 0
    assert io.parse(out)[0].passed


def test_gcybe_only_fails_cybe_with_witness(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert run(["catalog", "emit", "gcybe_only", "--n", "2", "--out", str(path)], capsys)[0] == 0
    code, out, err = run(["verify", "--in", str(path), "--identity", "cybe"], capsys)
    assert code == 1
    verdict = io.parse(out)[0]
    assert not verdict.passed and verdict.witness in err
    assert run(["verify", "--in", str(path), "--identity", "gcybe"], capsys)[0] == 0


def test_missing_input_is_usage_error(tmp_path, capsys):
    code, _, err = run(["verify", "--in", str(tmp_path / "missing.json"), "--identity", "cybe"], capsys)
    assert code == 2 and "missing.json" in err


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["compute", "--curve", "smooth", "--n", "2"],
    ["verify", "--identity", "jacobi"],
    ["catalog", "emit", "elliptic"],
    ["compute", "--curve", "nodal", "--n", "1"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_bad_document_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{}", encoding="utf-8")
    assert run(["verify", "--in", str(path), "--identity", "skew"], capsys)[0] == 2


def test_nondeg_point_option(tmp_path, capsys):
    path = tmp_path / "y.json"
    path.write_text(io.serialize(catalog.yang(2).tensor), encoding="utf-8")
    assert run(["verify", "--in", str(path), "--identity", "nondeg", "--at", "1/2,3"], capsys)[0] == 0
    assert run(["verify", "--in", str(path), "--identity", "nondeg", "--at", "2,2"], capsys)[0] == 2
    assert run(["verify", "--in", str(path), "--identity", "nondeg", "--at", "2"], capsys)[0] == 2


def test_catalog_list(capsys):
    code, out, _ = run(["catalog", "list"], capsys)
    assert code == 0 and out.split() == catalog.names()


@pytest.mark.parametrize("curve", ["nodal", "cuspidal"])
@pytest.mark.parametrize("n", ["2", "3", "4"])
def test_compute_matches_catalog(curve, n, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["compute", "--curve", curve, "--n", n, "--out", str(a)], capsys)
    run(["catalog", "emit", curve, "--n", n, "--out", str(b)], capsys)
    assert run(["compare", "--a", str(a), "--b", str(b)], capsys)[0] == 0


def test_compare_detects_difference(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["catalog", "emit", "yang", "--n", "2", "--out", str(a)], capsys)
    run(["catalog", "emit", "cuspidal", "--n", "2", "--out", str(b)], capsys)
    assert run(["compare", "--a", str(a), "--b", str(b)], capsys)[0] == 1


def test_expand_and_reconstruct(tmp_path, capsys):
    src, series = tmp_path / "c.json", tmp_path / "s.json"
    run(["catalog", "emit", "cuspidal", "--n", "2", "--out", str(src)], capsys)
    assert run(["expand", "--in", str(src), "--order", "4", "--out", str(series)], capsys)[0] == 0
    assert io.parse(series.read_text(encoding="utf-8")).order == 4
    assert run(["reconstruct", "--in", str(series)], capsys)[0] == 0
    assert run(["reconstruct", "--in", str(src), "--order", "6"], capsys)[0] == 0
    g = tmp_path / "g.json"
    run(["catalog", "emit", "gcybe_only", "--n", "2", "--out", str(g)], capsys)
    code, _, err = run(["reconstruct", "--in", str(g)], capsys)
    assert code == 1 and "FAIL" in err


def test_module_entry_point(tmp_path):
    out = tmp_path / "y.json"
    proc = subprocess.run([sys.executable, "-m", "rmatrix", "catalog", "emit", "yang", "--n", "2", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "rmatrix", "verify", "--in", str(out), "--identity", "skew"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
