import json
import math
from pathlib import Path

import pytest

from fluidris.cli import main
from fluidris.errors import ConfigurationError
from fluidris.scenario import load_scenario, scenario_from_dict
from fluidris.tomlmini import loads as toml_loads


def _read_csv(path):
    lines = Path(path).read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


def test_tomlmini_parses_bundled_config():
    from fluidris.cli import _resolve_config

    doc = toml_loads(_resolve_config("fris25").read_text())
    assert doc["geometry"]["m_x"] == 20
    assert doc["selection"]["mode"] == "fluid"
    assert doc["budget"]["alpha_f"] == 2.1


def test_tomlmini_rejects_garbage():
    with pytest.raises(ConfigurationError):
        toml_loads("key value")
    with pytest.raises(ConfigurationError):
        toml_loads("[unterminated\nx = 1")


def test_json_mirror_equivalent_to_toml(tmp_path):
    from fluidris.cli import _resolve_config

    toml_path = _resolve_config("ris25")
    json_path = toml_path.with_suffix(".json")
    assert load_scenario(toml_path) == load_scenario(json_path)


def test_run_produces_all_artifacts(tmp_path):
    rc = main(["run", "fris25", "--trials", "20000", "--out", str(tmp_path), "--snr-db-range", "30:50:10"])
    assert rc == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {
        "fris25_pattern.txt",
        "fris25_pattern.json",
        "fris25_pdf.csv",
        "fris25_mc_hist.csv",
        "fris25_outage.csv",
        "fris25_capacity.csv",
        "fris25_provenance.json",
    }
    prov = json.loads((tmp_path / "fris25_provenance.json").read_text())
    assert prov["selection"]["tau_used"] == pytest.approx(0.421, abs=1e-3)
    assert prov["selection"]["max_corr"] == pytest.approx(0.402, abs=2e-3)
    assert prov["mixture"]["regime"] == "simple"
    header, rows = _read_csv(tmp_path / "fris25_outage.csv")
    assert header[:4] == ["snr_db", "r_tilde", "op_exact", "op_asymptotic"]
    assert len(rows) == 3


def test_run_ris_provenance_max_corr(tmp_path):
    rc = main(["run", "ris25", "--trials", "0", "--out", str(tmp_path), "--snr-db-range", "40:40:1"])
    assert rc == 0
    prov = json.loads((tmp_path / "ris25_provenance.json").read_text())
    assert prov["selection"]["max_corr"] == pytest.approx(0.790, abs=2e-3)


def test_run_without_trials_skips_mc_columns(tmp_path):
    rc = main(["run", "fris25", "--trials", "0", "--out", str(tmp_path), "--snr-db-range", "30:50:10"])
    assert rc == 0
    assert not (tmp_path / "fris25_mc_hist.csv").exists()
    header, _ = _read_csv(tmp_path / "fris25_outage.csv")
    assert "op_mc" not in header
    header, _ = _read_csv(tmp_path / "fris25_capacity.csv")
    assert "ec_mc" not in header


def test_run_is_bit_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        rc = main(["run", "ris36", "--trials", "5000", "--out", str(out), "--snr-db-range", "40:60:10"])
        assert rc == 0
    for fa in sorted(a.iterdir()):
        fb = b / fa.name
        assert fa.read_bytes() == fb.read_bytes(), fa.name


def test_invalid_config_exit_code(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[selection]\nmode = \"warp\"\n")
    assert main(["run", str(bad), "--out", str(tmp_path)]) == 2
    missing = tmp_path / "nope.toml"
    assert main(["run", str(missing), "--out", str(tmp_path)]) == 2
    bad_type = tmp_path / "badtype.toml"
    bad_type.write_text("[geometry]\nm_x = \"twenty\"\n")
    assert main(["run", str(bad_type), "--out", str(tmp_path)]) == 2


def test_compare_orders_scenarios(tmp_path):
    rc = main(
        ["compare", "fris25", "ris25", "--out", str(tmp_path), "--snr-db-range", "40:80:10", "--trials", "0"]
    )
    assert rc == 0
    header, rows = _read_csv(tmp_path / "compare.csv")
    assert header == ["snr_db", "op_exact_fris25", "ec_fris25", "op_exact_ris25", "ec_ris25"]
    for row in rows:
        assert float(row["op_exact_fris25"]) <= float(row["op_exact_ris25"])
        assert float(row["ec_fris25"]) >= float(row["ec_ris25"])


def test_compare_rejects_single_config(tmp_path):
    assert main(["compare", "fris25", "--out", str(tmp_path)]) == 2


def test_compare_rejects_mismatched_grids(tmp_path):
    from fluidris.scenario import compare_scenarios
    from fluidris.cli import _resolve_config
    from dataclasses import replace

    a = load_scenario(_resolve_config("fris25"))
    b = replace(load_scenario(_resolve_config("ris25")), snr_db=(10.0, 20.0))
    with pytest.raises(ConfigurationError):
        compare_scenarios([a, b], tmp_path / "c.csv")


def test_scenario_dict_roundtrip():
    from fluidris.cli import _resolve_config

    sc = load_scenario(_resolve_config("fris36"))
    assert scenario_from_dict(sc.to_dict()) == sc


def test_snr_range_parse_errors(tmp_path):
    assert main(["run", "fris25", "--out", str(tmp_path), "--snr-db-range", "80:20:5"]) == 2
    assert main(["run", "fris25", "--out", str(tmp_path), "--snr-db-range", "garbage"]) == 2
