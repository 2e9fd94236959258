import json
import math
from pathlib import Path

import numpy as np
import pytest

import limitspec as ls
from limitspec.cli import COMMANDS, ConfigError, load_config, main, run

FIXTURES = Path(__file__).parent / "fixtures"
ALL_FIXTURES = sorted(FIXTURES.glob("*.json"))


def write_cfg(tmp_path: Path, obj) -> Path:
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return path


def minimal_random_cfg(**overrides):
    cfg = {
        "command": "random-spec",
        "grid": {"nx": 32, "ny": 32},
        "params": {"alphabet": [[0.0, 0.0]], "epsilon": 0.5},
        "output": {"json": "out.json"},
    }
    cfg.update(overrides)
    return cfg


# ---------------------------------------------------------------------------
# config validation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("path", ALL_FIXTURES, ids=lambda p: p.stem)
def test_fixture_configs_parse(path):
    cfg = load_config(path)
    assert cfg.command in COMMANDS


def test_config_rejects_invalid_json(tmp_path):
    path = write_cfg(tmp_path, '{"command": "spectrum",}')
    with pytest.raises(ConfigError, match=r":1:\d+"):
        load_config(path)


def test_config_rejects_unknown_keys(tmp_path):
    path = write_cfg(tmp_path, minimal_random_cfg(extra=1))
    with pytest.raises(ConfigError, match="unknown keys.*extra"):
        load_config(path)


def test_config_rejects_unknown_command(tmp_path):
    path = write_cfg(tmp_path, minimal_random_cfg(command="spektrum"))
    with pytest.raises(ConfigError, match="config.command"):
        load_config(path)


def test_config_rejects_unknown_param(tmp_path):
    cfg = minimal_random_cfg()
    cfg["params"]["wordLen"] = 3
    with pytest.raises(ConfigError, match="unknown keys.*wordLen"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_requires_grid_axes(tmp_path):
    cfg = minimal_random_cfg(grid={"nx": 32})
    with pytest.raises(ConfigError, match="config.grid.ny"):
        load_config(write_cfg(tmp_path, cfg))


@pytest.mark.parametrize("nx", [8, 4096, "32"])
def test_config_bounds_grid_size(tmp_path, nx):
    cfg = minimal_random_cfg(grid={"nx": nx, "ny": 32})
    with pytest.raises(ConfigError, match="config.grid.nx"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_rejects_degenerate_bbox(tmp_path):
    cfg = minimal_random_cfg(grid={"nx": 32, "ny": 32, "bbox": [1.0, -1.0, 0.0, 1.0]})
    with pytest.raises(ConfigError, match="bbox"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_pseudospectrum_requires_bbox(tmp_path):
    cfg = {
        "command": "pseudospectrum",
        "operator": {"diagonals": {"0": {"kind": "constant", "value": [1.0, 0.0]}}},
        "grid": {"nx": 32, "ny": 32},
        "params": {"epsilon": 0.5, "n": 20},
    }
    with pytest.raises(ConfigError, match="bbox.*required"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_random_spec_rejects_operator(tmp_path):
    cfg = minimal_random_cfg(
        operator={"diagonals": {"0": {"kind": "constant", "value": [1.0, 0.0]}}}
    )
    with pytest.raises(ConfigError, match="alphabet from params"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_verify_requires_fields(tmp_path):
    cfg = {
        "command": "verify",
        "operator": {"diagonals": {"0": {"kind": "sqrt_parity"}}},
        "params": {"kind": "limit-operator", "m": 4},
    }
    with pytest.raises(ConfigError, match="config.params.h"):
        load_config(write_cfg(tmp_path, cfg))
    cfg["params"] = {"kind": "surprise"}
    with pytest.raises(ConfigError, match="config.params.kind"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_output_paths_must_be_strings(tmp_path):
    cfg = minimal_random_cfg(output={"json": 7})
    with pytest.raises(ConfigError, match="config.output.json"):
        load_config(write_cfg(tmp_path, cfg))


def test_config_epsilon_must_be_positive(tmp_path):
    cfg = minimal_random_cfg()
    cfg["params"]["epsilon"] = -1.0
    with pytest.raises(ConfigError, match="epsilon"):
        load_config(write_cfg(tmp_path, cfg))


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_main_exit_zero_on_verify_fixture(tmp_path, capsys):
    rc = main(["--config", str(FIXTURES / "verify_sqrt.json"), "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "verify_sqrt.json").read_text())
    assert doc["verdict"] is True
    assert doc["maxDiscrepancy"] == 0.0
    out = capsys.readouterr().out
    assert "verify" in out and "verdict=True" in out


def test_main_exit_two_on_config_error(tmp_path, capsys):
    rc = main(["--config", str(tmp_path / "missing.json")])
    assert rc == 2
    assert "config error" in capsys.readouterr().err


def test_main_exit_two_on_bad_operator_payload(tmp_path, capsys):
    cfg = {
        "command": "spectrum",
        "operator": {"diagonals": {"0": {"kind": "martian"}}},
        "grid": {"nx": 32, "ny": 32},
        "output": {"json": "o.json"},
    }
    rc = main(["--config", str(write_cfg(tmp_path, cfg)), "--out", str(tmp_path)])
    assert rc == 2
    assert "martian" in capsys.readouterr().err


def test_main_exit_three_on_capacity(tmp_path, capsys):
    cfg = {
        "command": "pseudospectrum",
        "operator": {"diagonals": {"0": {"kind": "constant", "value": [5.0, 0.0]}}},
        "grid": {"nx": 16, "ny": 16, "bbox": [-1.0, 1.0, -1.0, 1.0]},
        "params": {"epsilon": 0.5, "n": 2500},
        "output": {"json": "o.json"},
    }
    rc = main(["--config", str(write_cfg(tmp_path, cfg)), "--out", str(tmp_path)])
    assert rc == 3
    assert "capacity error" in capsys.readouterr().err


def test_main_exit_four_on_failed_verification(tmp_path, capsys):
    base = json.loads((FIXTURES / "verify_sqrt.json").read_text())
    base["params"]["limitOperator"] = {
        "diagonals": {
            "-1": {"kind": "constant", "value": [1.0, 0.0]},
            "1": {"kind": "constant", "value": [1.0, 0.0]},
        }
    }
    rc = main(["--config", str(write_cfg(tmp_path, base)), "--out", str(tmp_path)])
    assert rc == 4
    doc = json.loads((tmp_path / "verify_sqrt.json").read_text())
    assert doc["verdict"] is False
    assert "verdict=False" in capsys.readouterr().out


def test_threads_env_must_be_an_integer(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LIMITSPEC_THREADS", "many")
    rc = main(["--config", str(FIXTURES / "verify_randprod.json"), "--out", str(tmp_path)])
    assert rc == 2
    monkeypatch.setenv("LIMITSPEC_THREADS", "2")
    rc = main(["--config", str(FIXTURES / "verify_randprod.json"), "--out", str(tmp_path)])
    assert rc == 0


# ---------------------------------------------------------------------------
# artifacts
# ---------------------------------------------------------------------------


def test_cli_random_spec_matches_library(tmp_path, capsys):
    rc = main(["--config", str(FIXTURES / "random_segment.json"), "--out", str(tmp_path)])
    assert rc == 0
    region = ls.region_from_json(json.loads((tmp_path / "random_segment.json").read_text()))
    want = ls.random_bidiagonal_spectrum([0.0, 1.5j], 1.0, nx=256, ny=256)
    assert region.bbox == want.bbox
    assert np.array_equal(region.mask, want.mask)
    assert region.components == want.components


def test_cli_spectrum_free_interval(tmp_path, capsys):
    rc = main(["--config", str(FIXTURES / "spectrum_free.json"), "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "spectrum_free.json").read_text())
    region = ls.region_from_json(doc)
    assert len(region.components) == 1
    c = region.components[0]
    assert isinstance(c, ls.RealInterval)
    assert abs(c.a + 2.0) <= 1e-6 and abs(c.b - 2.0) <= 1e-6
    # csv: one header plus one row per marked cell
    lines = (tmp_path / "spectrum_free.csv").read_text().splitlines()
    assert lines[0] == "re,im"
    assert len(lines) - 1 == int(region.mask.sum())
    re0, im0 = (float(v) for v in lines[1].split(","))
    assert math.isfinite(re0) and math.isfinite(im0)
    # svg rendered alongside the delimited output
    svg = (tmp_path / "spectrum_free.svg").read_text()
    assert svg.lstrip().startswith("<?xml")


def test_cli_limitops_report(tmp_path, capsys):
    rc = main(["--config", str(FIXTURES / "limitops_periodic.json"), "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "limitops_periodic.json").read_text())
    assert doc["command"] == "limitops"
    assert doc["heuristic"] is True
    assert doc["n"] == 120 and doc["samples"] == 8
    descs = [e["descriptor"] for e in doc["entries"]]
    assert descs == ["shift:0", "shift:1", "shift:2"]
    assert all(e["lowerNormEstimate"] >= 0.0 for e in doc["entries"])


def test_cli_default_output_name_and_out_dir_creation(tmp_path, capsys):
    cfg = minimal_random_cfg()
    del cfg["output"]
    nested = tmp_path / "deep" / "dir"
    rc = main(["--config", str(write_cfg(tmp_path, cfg)), "--out", str(nested)])
    assert rc == 0
    assert (nested / "random-spec.json").exists()


def test_cli_essential_provenance_in_json(tmp_path, capsys):
    rc = main(
        [
            "--config",
            str(FIXTURES / "essential_torus.json"),
            "--out",
            str(tmp_path),
            "--threads",
            "2",
        ]
    )
    assert rc == 0
    doc = json.loads((tmp_path / "essential_torus.json").read_text())
    prov = doc["provenance"]
    assert prov["method"] == "union-over-limit-operators"
    assert prov["convergents"][-1] == [34, 55]
    assert "cauchyHausdorff" in prov
    assert prov["phaseSamples"] == 8


def test_cli_reruns_are_byte_identical(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        rc = main(["--config", str(FIXTURES / "spectrum_periodic.json"), "--out", str(out)])
        assert rc == 0
    for name in ("spectrum_periodic.json", "spectrum_periodic.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
