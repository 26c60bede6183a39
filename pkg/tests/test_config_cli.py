import csv
import json
import math

import pytest

from rlandau import cache
from rlandau.cli import EXIT_CONFIG, EXIT_OK, EXIT_PHYSICS, main
from rlandau.config import RunConfig, parse_config
from rlandau.errors import ConfigError


def _rows(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# tool=rlandau")
    return list(csv.reader(lines[1:]))


# ---------------------------------------------------------------- config


def test_example_config_loads(rb_config):
    assert rb_config.B == 2.5
    assert rb_config.temperatures == (300.0, 70.0, 2.0)
    assert rb_config.defects.defect(6, 1) == pytest.approx(2.67470)
    assert rb_config.decay.coulomb_n_max == 40
    assert rb_config.channels.theta == pytest.approx(math.pi / 2)
    assert rb_config.excitation.tau_6p_ns == 129.0


def test_empty_config_gives_defaults():
    cfg = parse_config("")
    assert cfg == RunConfig()
    assert cfg.defects is None


@pytest.mark.parametrize("text", [
    "[field]\nB = -1\n",
    "[field]\nB = strong\n",
    "[field]\ntemperatures = 300 -4\n",
    "[output]\nformat = xml\n",
    "[grids]\nmode = magic\n",
    "[channels]\nresonance = sometimes\n",
    "[channels]\nresonant_branch = up\n",
    "[defects]\n5 = 3.1\n",
    "[defects]\n5 x = 3.1\n",
    "[defects]\n5 0 = 1 2 3\n",
    "[field\nB = 2\n",
    "B = 2\n",
])
def test_bad_config_raises(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_digest_tracks_text():
    a, b = parse_config("[field]\nB = 2.5\n"), parse_config("[field]\nB = 2.50\n")
    assert a.digest != b.digest
    assert a.digest == parse_config("[field]\nB = 2.5\n").digest
    assert len(RunConfig().digest) == 16


# ---------------------------------------------------------------- CLI


def test_state_command(tmp_path):
    assert main(["--out", str(tmp_path), "state", "--Nz", "100"]) == EXIT_OK
    rows = _rows(tmp_path / "energy.csv")
    assert rows[0][0] == "state" and rows[1][0] == "|100,0,0,0>"
    assert (tmp_path / "axial.csv").exists() and (tmp_path / "transverse.csv").exists()


def test_state_ground_ring(tmp_path):
    assert main(["--out", str(tmp_path), "state", "--M", "5"]) == EXIT_OK
    head, row = _rows(tmp_path / "energy.csv")
    ring = float(row[head.index("ring_radius_over_rc")])
    assert ring == pytest.approx(math.sqrt(11), abs=0.02)


def test_invalid_state_exit_code(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "state", "--Nl", "0", "--M", "-2"]) == EXIT_PHYSICS
    assert "InvalidQuantumNumberError" in capsys.readouterr().err


def test_invalid_field_exit_code(tmp_path):
    assert main(["--out", str(tmp_path), "--B", "-1", "state"]) == EXIT_CONFIG


def test_missing_config_exit_code(tmp_path):
    assert main(["--config", str(tmp_path / "nope.ini"), "state"]) == EXIT_CONFIG


def test_bad_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["state", "--Nz", "many"])
    assert exc.value.code == EXIT_CONFIG


def test_excite_zero_time(tmp_path):
    assert main(["--out", str(tmp_path), "excite", "--t", "0"]) == EXIT_OK
    head, *rows = _rows(tmp_path / "ladder.csv")
    assert float(rows[0][2]) == 1.0
    assert all(float(r[2]) == 0.0 for r in rows[1:])


def test_excite_poisson_and_reversal(tmp_path):
    assert main(["--out", str(tmp_path), "excite", "--t", "3e-7", "--samples", "4",
                 "--reverse"]) == EXIT_OK
    head, *rows = _rows(tmp_path / "ladder.csv")
    for r in rows:
        if r[1] == "reversed_c0":
            assert float(r[2]) == pytest.approx(1.0, abs=1e-6)
        else:
            assert float(r[2]) == pytest.approx(float(r[3]), abs=1e-6)


def test_json_output_mirrors_csv(tmp_path):
    assert main(["--out", str(tmp_path / "c"), "excite", "--t", "1e-7", "--samples", "2"]) == 0
    assert main(["--out", str(tmp_path / "j"), "--format", "json", "excite", "--t", "1e-7",
                 "--samples", "2"]) == 0
    data = json.loads((tmp_path / "j" / "ladder.json").read_text())
    head, *rows = _rows(tmp_path / "c" / "ladder.csv")
    assert data["columns"] == head
    assert data["provenance"]["command"] == "excite"
    assert len(data["rows"]) == len(rows)
    assert data["rows"][1]["population"] == pytest.approx(float(rows[1][2]), rel=1e-15)


def test_interaction_command(tmp_path):
    assert main(["--out", str(tmp_path), "interaction", "--Nz", "100", "--R", "2", "3"]) == 0
    head, *rows = _rows(tmp_path / "channels.csv")
    assert {"C3_GHz_um3", "C6_GHz_um6", "delta_GHz", "R_cr_um", "combo"} <= set(head)
    assert any(r[head.index("combo")] == "sigma+sigma+" for r in rows)
    head, *rows = _rows(tmp_path / "shift.csv")
    assert [float(r[0]) for r in rows] == [2.0, 3.0]


def _strip(path):
    return path.read_text().splitlines()[1:]


def test_commands_are_deterministic(tmp_path):
    for tag in ("a", "b"):
        assert main(["--out", str(tmp_path / tag), "state", "--Nz", "60", "--rho-points",
                     "51"]) == 0
    for name in ("energy.csv", "axial.csv", "transverse.csv"):
        assert _strip(tmp_path / "a" / name) == _strip(tmp_path / "b" / name)


@pytest.mark.slow
def test_cold_and_warm_cache_agree(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "cache"))
    args = ["state", "--Nz", "40", "--Nl", "1", "--M", "2", "--rho-points", "51"]
    cache.clear_memory()
    assert main(["--out", str(tmp_path / "cold"), *args]) == 0
    assert list((tmp_path / "cache").glob("*.npz"))
    cache.clear_memory()
    assert main(["--out", str(tmp_path / "warm"), *args]) == 0
    cache.clear_memory()
    for name in ("energy.csv", "axial.csv"):
        assert _strip(tmp_path / "cold" / name) == _strip(tmp_path / "warm" / name)


# ---------------------------------------------------------------- cache layer


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    key = {"kind": "probe", "x": 1.5}
    assert cache.load(key) is None
    cache.store(key, {"a": [1.0, 2.0]})
    cache.clear_memory()
    rec = cache.load(key)
    assert list(rec["a"]) == [1.0, 2.0]
    assert cache.load({"kind": "probe", "x": 2.5}) is None
    cache.clear_memory()


def test_cache_disabled(monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, "off")
    assert cache.cache_dir() is None
    cache.store({"kind": "mem-only"}, {"a": [3.0]})
    assert list(cache.load({"kind": "mem-only"})["a"]) == [3.0]
    cache.clear_memory()
    assert cache.load({"kind": "mem-only"}) is None


def test_cache_ignores_corrupt_file(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    key = {"kind": "corrupt"}
    cache.store(key, {"a": [1.0]})
    cache.clear_memory()
    for p in tmp_path.glob("*.npz"):
        p.write_bytes(b"not a zip")
    assert cache.load(key) is None
    cache.clear_memory()
