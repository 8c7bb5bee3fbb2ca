import json
from pathlib import Path

from pmlwave.cli import main

SCENARIOS = Path(__file__).resolve().parents[1] / "src" / "pmlwave" / "scenarios"


def _write_tiny(tmp_path, **run_overrides):
    cfg = {
        "grid": {"dim": 1, "extent": [8.0], "resolution": 20},
        "sources": [{"kind": "point_additive", "position": [2.0],
                     "waveform": {"kind": "gaussian_pulse", "omega0": 6.2832,
                                  "tau": 1.0, "delay": 3.0}}],
        "probes": [{"kind": "time_series", "name": "p", "position": [4.0]}],
        "run": {"duration": 2.0, **run_overrides},
    }
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(cfg))
    return path


def test_run_verb(tmp_path, capsys):
    path = _write_tiny(tmp_path)
    assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "manifest.json").exists()
    assert "wrote" in capsys.readouterr().out


def test_run_verb_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"grid": {"dim": 1, "extent": [8], "resolution": 20}, '
                   '"sources": [], "bogus_key": 1}')
    assert main(["run", str(bad)]) == 1
    assert "bogus_key" in capsys.readouterr().err


def test_run_verb_missing_file():
    assert main(["run", "/nonexistent/config.json"]) == 1


def test_run_verb_instability_exit_code(tmp_path, capsys, monkeypatch):
    from pmlwave.errors import InstabilityError

    path = _write_tiny(tmp_path)

    def boom(cfg, out_dir=None):
        raise InstabilityError(300)

    monkeypatch.setattr("pmlwave.cli.run_scenario", boom)
    assert main(["run", str(path)]) == 2
    assert "step 300" in capsys.readouterr().err


def test_config_rejects_out_of_range_safety(tmp_path, capsys):
    path = _write_tiny(tmp_path, cfl_safety=1.5)
    assert main(["run", str(path)]) == 1


def test_validate_verb_subset(capsys):
    assert main(["validate", "--criteria", "cone-limit"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] cone-limit" in out


def test_profile_verb(tmp_path, capsys):
    out_file = tmp_path / "profile.csv"
    code = main(["profile", str(SCENARIOS / "1d-reflection.json"),
                 "--out", str(out_file)])
    assert code == 0
    lines = out_file.read_text().strip().split("\n")
    assert lines[0] == "array,location_index,coordinate,value"
    names = {line.split(",")[0] for line in lines[1:]}
    assert {"sigma_x_u", "sigma_x_v", "kappa_x_u", "kappa_x_v"} <= names


def test_sweep_verb(tmp_path, capsys):
    path = _write_tiny(tmp_path)
    code = main(["sweep", str(path), "--vary", "grid.resolution",
                 "--values", "10,20", "--workers", "2",
                 "--out", str(tmp_path / "sweep")])
    assert code == 0
    dirs = sorted(p.name for p in (tmp_path / "sweep").iterdir())
    assert dirs == ["grid_resolution=10", "grid_resolution=20"]
    for d in dirs:
        assert (tmp_path / "sweep" / d / "manifest.json").exists()
