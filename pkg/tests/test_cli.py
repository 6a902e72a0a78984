import json

import pytest

from nalyap import __version__
from nalyap.cli import run
from nalyap.specparse import bundled_spec_path

NONELEM = str(bundled_spec_path("nonelem"))
SCHR = str(bundled_spec_path("schrodinger"))
AFFINE = str(bundled_spec_path("affine"))


def _json(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    assert run(argv + ["--out", str(out)]) == 0
    return json.loads(out.read_text()), out.read_bytes()


def test_chi_na_json_provenance(tmp_path):
    doc, _ = _json(tmp_path, ["chi-na", "--spec", SCHR, "--n", "20", "--S", "4", "--seed", "5"])
    assert doc["tool"] == "nalyap" and doc["version"] == __version__
    assert doc["seed"] == 5 and len(doc["spec_sha256"]) == 64
    assert doc["result"]["value"] == 1.0


def test_byte_identical_reruns(tmp_path):
    argv = ["chi", "--spec", AFFINE, "--t", "1e-3", "--n", "100", "--S", "5", "--seed", "2"]
    _, a = _json(tmp_path, argv, "a.json")
    _, b = _json(tmp_path, argv, "b.json")
    assert a == b


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("NALYAP_SEED", "17")
    doc, _ = _json(tmp_path, ["chi-na", "--spec", SCHR, "--n", "5", "--S", "2"])
    assert doc["seed"] == 17
    doc, _ = _json(tmp_path, ["chi-na", "--spec", SCHR, "--n", "5", "--S", "2", "--seed", "3"])
    assert doc["seed"] == 3


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = run(["sweep", "--spec", AFFINE, "--t", "1e-2,1e-3", "--n", "100", "--S", "4",
              "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    assert any("spec_sha256" in ln for ln in header)
    assert body[0] == "t,chi,chi_ratio,chi_na,abs_error,n,S,seed"
    assert len(body) == 3


def test_other_subcommands(tmp_path):
    doc, _ = _json(tmp_path, ["classify", "--spec", NONELEM])
    assert doc["result"]["class"] == "NonElementaryCertified"
    doc, _ = _json(tmp_path, ["chi-exact", "--spec", SCHR, "--n", "1,2,3"])
    assert doc["result"]["a_n_over_n"] == {"1": 1, "2": 1, "3": 1}
    doc, _ = _json(tmp_path, ["kak", "--spec", NONELEM, "--word", "D,E,E"])
    assert doc["result"]["lognorm"] == 3
    doc, _ = _json(tmp_path, ["trace", "--spec", NONELEM, "--n", "30", "--S", "10"])
    assert doc["result"]["hyperbolic_fraction"] >= 0.5
    doc, _ = _json(tmp_path, ["residual", "--spec", NONELEM, "--t", "1e-3", "--n", "30",
                              "--S", "50", "--mark", "0;1"])
    assert "tv" in doc["result"]
    out = tmp_path / "st.csv"
    assert run(["stationary", "--spec", NONELEM, "--n", "20", "--S", "10", "--out", str(out)]) == 0
    assert "index,residue,x,y" in out.read_text()
    out = tmp_path / "h.csv"
    assert run(["hybrid-check", "--spec", NONELEM, "--point", "1", "--t", "1e-2,1e-3",
                "--out", str(out)]) == 0
    assert out.read_text().count("\n") > 4


def test_usage_errors(capsys):
    assert run([]) == 1
    assert run(["bogus"]) == 1
    assert run(["chi-na"]) == 1
    assert run(["chi-na", "--spec", "/nonexistent.cfg"]) == 1
    assert run(["kak", "--spec", NONELEM, "--word", "Z"]) == 1
    assert run(["chi", "--spec", NONELEM, "--n", "abc"]) == 1


def test_bad_config_is_usage_error(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text('[[generator]]\nmatrix = [["2", "0"], ["0", "1"]]\n')
    assert run(["chi-na", "--spec", str(cfg)]) == 1


def test_computational_error_exit_2(tmp_path, capsys):
    cfg = tmp_path / "ell.cfg"
    cfg.write_text('[[generator]]\nmatrix = [["0", "-1"], ["1", "0"]]\n')
    rc = run(["trace", "--spec", str(cfg), "--n", "4", "--S", "4"])
    assert rc == 2
    rec = json.loads(capsys.readouterr().out)
    assert rec["error"] == "TooFewHyperbolic"
