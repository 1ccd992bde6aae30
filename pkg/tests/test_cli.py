import csv
import io
import json
import os
import subprocess
import sys

import pytest

from icanon import cli
from icanon.errors import InvariantViolation
from icanon.positivity import CoefficientRecord, PositivityReport
from icanon.ring import Q


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_kl_table(capsys):
    code, out, _ = run(capsys, "kl", "--family", "A", "--rank", "2", "--format", "csv")
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["y", "w", "p"]
    assert ["e", "s1 s2 s1", "q^3"] in rows
    assert len({r[1] for r in rows[1:]}) == 6


def test_pkl_table(capsys):
    code, out, _ = run(capsys, "pkl", "--family", "A", "--rank", "2", "--J", "s1", "--format", "csv")
    assert code == 0
    rows = csv_rows(out)[1:]
    assert len({r[1] for r in rows}) == 3
    assert ["e", "s2", "q"] in rows


def test_hybrid_element(capsys):
    code, out, _ = run(capsys, "hybrid", "--family", "B", "--rank", "2", "--I", "s1", "--w", "s0 s1",
                       "--format", "csv")
    assert code == 0
    assert csv_rows(out)[1:] == [["s0", "s0 s1", "q"], ["s0 s1", "s0 s1", "1"]]


def test_hybrid_decompositions(capsys):
    code, out, _ = run(capsys, "hybrid", "--family", "B", "--rank", "2", "--I", "s1", "--J", "s0",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["J"] == [0] and doc["I"] == [1] and len(doc["elements"]) == 4
    code, out, _ = run(capsys, "hybrid", "--family", "A", "--rank", "2", "--I", "s1", "--format", "csv")
    assert code == 0 and len({r[1] for r in csv_rows(out)[1:]}) == 6


def test_basis_commands(capsys):
    code, out, _ = run(capsys, "basis", "--n", "1", "--factors", "V,V", "--kind", "canonical", "--format", "csv")
    rows = csv_rows(out)[1:]
    assert code == 0 and len({r[0] for r in rows}) == 4
    assert ["(2,1)", "(1,2)", "q"] in rows and ["(2,1)", "(2,1)", "1"] in rows
    code, out, _ = run(capsys, "basis", "--n", "1", "--factors", "V", "--kind", "iota", "--variant", "bw13",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["basis"] == "iota" and len(doc["elements"]) == 2
    assert doc["elements"][0]["terms"] == [[[1], [[0, 1]]], [[2], [[1, 1]]]]
    code, out, _ = run(capsys, "basis", "--n", "2", "--factors", "wedge2", "--format", "csv")
    rows = csv_rows(out)[1:]
    assert code == 0 and rows == [["(1,2)", "(1,2)", "1"], ["(1,3)", "(1,3)", "1"], ["(2,3)", "(2,3)", "1"]]


def test_positivity_commands(capsys, tmp_path):
    out_file = tmp_path / "rep.csv"
    code, _, _ = run(capsys, "positivity", "--n", "1", "--factors", "V,V", "--split", "1", "--variant", "bw13",
                     "--format", "csv", "--out", str(out_file))
    assert code == 0 and out_file.read_text().startswith("b,b_alpha,b_beta,t,verdict")
    code, out, _ = run(capsys, "positivity", "--n", "2", "--factors", "V,V,V", "--split", "2",
                       "--variant", "bao17", "--format", "json")
    assert code == 0 and json.loads(out)["summary"]["failures"] == 0
    code, out, _ = run(capsys, "positivity", "--n", "2", "--factors", "V,wedge2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["split"] == 2
    assert all(r["b"] == r["b_alpha"] and r["t"] == "1" for r in doc["records"])
    code, out, _ = run(capsys, "positivity", "--lambda", "2", "--format", "csv")
    assert code == 0 and len(csv_rows(out)) > 3


@pytest.mark.parametrize("argv,field", [
    (["kl", "--family", "A", "--rank", "6"], "rank"),
    (["kl", "--family", "B", "--rank", "5"], "rank"),
    (["pkl", "--family", "A", "--rank", "2", "--J", "s0"], "J"),
    (["hybrid", "--family", "B", "--rank", "2", "--I", "s7"], "I"),
    (["basis", "--n", "2", "--factors", "wedge3"], "factors"),
    (["basis", "--n", "3", "--factors", "V,V,V,V,V,V,V"], "factors"),
    (["positivity", "--n", "2", "--factors", "V,V", "--split", "5"], "split"),
    (["kl", "--family", "A", "--rank", "2", "--w", "s9"], "w"),
])
def test_config_errors_name_the_field(capsys, argv, field):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert f"error: {field}:" in err


def test_positivity_failure_exit_code(capsys, monkeypatch):
    bad = PositivityReport("mixed", {}, 1, [CoefficientRecord((2, 1), (2,), (1,), -Q, False)])
    monkeypatch.setattr(cli, "positivity_report", lambda *a, **k: bad)
    code, out, err = run(capsys, "positivity", "--n", "1", "--factors", "V,V", "--format", "csv")
    assert code == 1
    assert "NEGATIVE" not in out and "false" in out
    dump = json.loads(err.split("\n", 1)[1])
    assert dump["failures"][0]["t"] == "-q"


def test_invariant_violation_exit_code(capsys, monkeypatch):
    def boom(cfg):
        raise InvariantViolation("planted")
    monkeypatch.setattr(cli, "cmd_kl", boom)
    code, _, err = run(capsys, "kl", "--family", "A", "--rank", "1")
    assert code == 3 and "planted" in err


def icanon(*argv, env=None):
    proc = subprocess.run([sys.executable, "-m", "icanon", *argv], capture_output=True, env=env, check=True)
    return proc.stdout


def test_cache_on_and_off_agree(tmp_path):
    argv = ["basis", "--n", "1", "--factors", "V,V,V", "--kind", "iota", "--format", "json"]
    env = {k: v for k, v in os.environ.items() if k != "ICANON_CACHE_DIR"}
    plain = icanon(*argv, "--no-cache", env=env)
    cold = icanon(*argv, "--cache-dir", str(tmp_path / "c"), env=env)
    entries = sorted((tmp_path / "c").iterdir())
    assert entries
    warm = icanon(*argv, "--cache-dir", str(tmp_path / "c"), env=env)
    assert plain == cold == warm
    assert sorted((tmp_path / "c").iterdir()) == entries
    from_env = icanon(*argv, env=dict(env, ICANON_CACHE_DIR=str(tmp_path / "env")))
    assert from_env == plain and any((tmp_path / "env").iterdir())
    ignored = icanon(*argv, "--no-cache", env=dict(env, ICANON_CACHE_DIR=str(tmp_path / "off")))
    assert ignored == plain and not (tmp_path / "off").exists()


def test_module_entry_point():
    assert icanon("kl", "--family", "A", "--rank", "1").startswith(b"# p_(y,w) for A1")
