import json
import subprocess
import sys
from fractions import Fraction

import pytest

from amplituhedron.cli import main, run_full_pipeline
from amplituhedron.zinput import moment_curve_z


def run(argv, capsys):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


@pytest.fixture
def zfile(tmp_path):
    def make(n, nodes=None):
        p = tmp_path / f"z{n}.json"
        p.write_text(json.dumps(moment_curve_z(nodes or range(1, n + 1)).to_json()))
        return p
    return make


def test_gen_and_check(tmp_path, capsys):
    out = tmp_path / "z.json"
    code, _ = run(["gen-z", "--n", 6, "--out", out], capsys)
    assert code == 0
    code, text = run(["check-z", out], capsys)
    rep = json.loads(text)
    assert code == 0 and rep["totally_positive"] and rep["generic"] and rep["n"] == 6
    code, _ = run(["gen-z", "--n", 4, "--nodes", "3,2,1,5"], capsys)
    assert code == 2


def test_outputs_are_rational_strings(zfile, capsys):
    code, text = run(["adjoint", "--z", zfile(5)], capsys)
    assert code == 0
    doc = json.loads(text)
    assert doc["degree"] == 1
    assert all(isinstance(t["coeff"], str) for t in doc["terms"])
    assert "." not in text.replace(".json", "")


def test_strata_and_membership(zfile, tmp_path, capsys):
    code, text = run(["strata", "--n", 5], capsys)
    rep = json.loads(text)
    assert code == 0 and rep["residual_count"] == 10
    assert list(rep["counts"].values()) == [5, 5, 5, 5, 5, 15, 5, 0, 10, 0, 5, 5, 0, 0]
    pt = tmp_path / "p.json"
    pt.write_text(json.dumps({"x": [[1, 1, 1, 1, 1], [1, 2, 3, 4, 5]]}))
    code, text = run(["membership", "--z", zfile(5), "--point", pt], capsys)
    assert code == 0 and json.loads(text)["certificate"] == "strict_member"


def test_sample_with_image(zfile, capsys):
    code, text = run(["sample", "--tag", "facet", "--i", 2, "--params", "1,1,1", "--z", zfile(5)], capsys)
    assert code == 0 and json.loads(text)["verdict"]["certificate"] == "inconclusive_boundary"
    code, _ = run(["sample", "--tag", "facet", "--i", 2, "--params", "1,1"], capsys)
    assert code == 2


def test_verify_canonical(zfile, tmp_path, capsys):
    z = zfile(5)
    adj = tmp_path / "a.json"
    assert run(["adjoint", "--z", z, "--out", adj], capsys)[0] == 0
    code, text = run(["verify-canonical", "--z", z, "--adjoint", adj], capsys)
    rep = json.loads(text)
    assert code == 0 and rep["verified"] and len(rep["residues"]) == 5
    doc = json.loads(adj.read_text())
    doc["terms"][0]["coeff"] = str(Fraction(doc["terms"][0]["coeff"]) + 1)
    adj.write_text(json.dumps(doc))
    assert run(["verify-canonical", "--z", z, "--adjoint", adj, "--no-facets"], capsys)[0] == 3


@pytest.mark.parametrize("n,degree", [(4, 0), (5, 1)])
def test_pipeline(n, degree, zfile, tmp_path, capsys):
    out = tmp_path / "run"
    code, text = run(["pipeline", "--z", zfile(n), "--out-dir", out], capsys)
    rep = json.loads(text)
    assert code == 0
    assert rep["adjoint_degree"] == degree and rep["kernel_dim"] == 1 and rep["residues_verified"]
    assert "timings" not in rep
    for name in ("z.json", "strata.json", "adjoint.json", "residues.json", "report.json"):
        assert (out / name).exists()
    assert json.loads((out / "report.json").read_text()) == rep


def test_pipeline_is_deterministic(zfile, tmp_path):
    z = zfile(6)
    for d in ("a", "b"):
        run_full_pipeline(z, tmp_path / d, jobs=2 if d == "b" else 1)
    for name in ("z.json", "strata.json", "adjoint.json", "residues.json", "report.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_pipeline_rejects_non_positive_z(tmp_path, capsys):
    rows = [list(r) for r in moment_curve_z(range(1, 6)).rows]
    rows[2] = [-v for v in rows[2]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 5, "rows": [[str(v) for v in r] for r in rows]}))
    code, _ = run(["pipeline", "--z", p, "--out-dir", tmp_path / "out"], capsys)
    assert code == 2
    assert json.loads((tmp_path / "out" / "report.json").read_text())["failed_stage"] == "check-z"
    assert run(["check-z", p], capsys)[0] == 2


def test_io_and_parse_errors(tmp_path, capsys):
    assert run(["check-z", tmp_path / "missing.json"], capsys)[0] == 4
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["check-z", broken], capsys)[0] == 2


def test_pentagon_demo(capsys):
    code, text = run(["pentagon-demo"], capsys)
    doc = json.loads(text)
    assert code == 0 and doc["verified"]
    assert all(r["residue"] in ("1", "-1") for e in doc["edges"] for r in e["vertex_residues"])
    code, _ = run(["pentagon-demo", "--vertices", "0,0,1,0,1"], capsys)
    assert code == 2


def test_console_script_entry_point(zfile):
    proc = subprocess.run([sys.executable, "-m", "amplituhedron.cli", "check-z", str(zfile(5))],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["generic"]


def test_jobs_env_override(zfile, monkeypatch, capsys):
    monkeypatch.setenv("AMPLI_JOBS", "2")
    code, text = run(["strata", "--z", zfile(6), "--vertices"], capsys)
    assert code == 0 and len(json.loads(text)["vertices"]) > 0
