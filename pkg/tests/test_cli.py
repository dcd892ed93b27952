import json

import pytest

from twistchain.cli import main


def test_verify_twist_exit_zero(tmp_path, capsys):
    out = tmp_path / "twist.json"
    code = main(["verify", "twist", "--seed", "11", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["seed"] == 11
    assert all(r["pass"] for r in doc["reports"])


def test_verify_stdout_json(capsys):
    code = main(["verify", "ybe", "--samples", "3", "--seed", "2"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["config"]["samples"] == 3
    ybe = [r for r in doc["reports"] if r["check_id"] == "ybe.yang_baxter"]
    assert len(ybe) == 3


def test_verify_csv_format(capsys):
    code = main(["verify", "twist", "--seed", "3", "--format", "csv"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "check_id,param_summary,residual,tolerance,pass"


def test_byte_identical_reruns(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "all", "--seed", "7", "--n-sites", "3",
                     "--xi", "0", "--samples", "4", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_spectrum_suite_flags_known_formula_mismatch(tmp_path, capsys):
    """With xi != 0 the displayed-coefficient fit check fails (documented and
    deliberate); the process reports it and exits nonzero."""
    out = tmp_path / "spec.json"
    code = main(["verify", "spectrum", "--seed", "5", "--xi", "0.5",
                 "--n-sites", "3", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    failing = {r["check_id"] for r in doc["reports"] if not r["pass"]}
    assert failing == {"spectrum.extraction_fit"}
    err = capsys.readouterr().err
    assert "spectrum.extraction_fit" in err


def test_spectrum_suite_clean_undeformed(tmp_path):
    out = tmp_path / "spec0.json"
    code = main(["verify", "spectrum", "--seed", "5", "--xi", "0",
                 "--n-sites", "3", "--out", str(out)])
    assert code == 0


def test_env_seed_default(monkeypatch, capsys):
    monkeypatch.setenv("TWISTCHAIN_SEED", "4242")
    assert main(["verify", "twist"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["seed"] == 4242


def test_flag_overrides_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 1\nn_sites = 3\nxi = 0.25\n")
    assert main(["verify", "twist", "--config", str(cfg), "--seed", "9"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["seed"] == 9            # flag wins
    assert doc["config"]["n_sites"] == 3  # file value preserved
    assert doc["config"]["xi"] == "0.25"


def test_tol_flag(capsys):
    code = main(["verify", "ybe", "--samples", "2", "--seed", "1",
                 "--tol", "ybe.yang_baxter=1e-30"])
    assert code == 1  # impossible tolerance forces failures
    doc = json.loads(capsys.readouterr().out)
    assert any(not r["pass"] for r in doc["reports"])


def test_complex_xi_sampling_flag(capsys):
    code = main(["verify", "ybe", "--samples", "4", "--seed", "6", "--complex-xi"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    samples = [r["params"]["xi"] for r in doc["reports"]
               if r["check_id"] == "ybe.yang_baxter"]
    assert any("i" in xi for xi in samples)  # drawn from the complex disk


def test_open_boundary_spectrum(capsys):
    code = main(["verify", "spectrum", "--boundary", "open", "--xi", "0.6",
                 "--seed", "2"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["check_id"] for r in doc["reports"]] == ["spectrum.open_boundary_terms"]


def test_bad_tol_flag():
    with pytest.raises(SystemExit):
        main(["verify", "ybe", "--tol", "nonsense"])


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit):
        main(["verify", "everything"])
