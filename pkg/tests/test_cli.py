import csv
import io
import json
import subprocess
import sys

import pytest

from photon_spinor.cli import RunConfig, main
from photon_spinor.errors import ConfigError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_orbit_helicity_radii():
    code, out, _ = run("orbit", "--rs", "1", "--h", "2")
    doc = json.loads(out)
    assert code == 0
    assert doc["rho_plus"] == pytest.approx(1.295, abs=1e-3)
    assert doc["rho_minus"] == pytest.approx(0.783, abs=1e-3)
    assert "diagnostics" in doc


def test_orbit_radii_double_with_rs():
    one = json.loads(run("orbit", "--rs", "1", "--h", "2")[1])
    two = json.loads(run("orbit", "--rs", "2", "--h", "2")[1])
    for key in ("rho_plus", "rho_minus", "rho_zero"):
        assert two[key] == pytest.approx(2 * one[key], rel=1e-12)


def test_orbit_threshold_error():
    code, out, err = run("orbit", "--h", "1")
    assert code == 1 and out == ""
    assert "InvalidAngularMomentum" in err and "angular momentum below threshold" in err


def test_orbit_standard_modes():
    doc = json.loads(run("orbit", "--m", "2", "--coords", "standard")[1])
    assert doc["omega_sq_plus"] == pytest.approx(32 / 81, abs=1e-12)
    doc = json.loads(run("orbit", "--h", "2", "--coords", "standard")[1])
    assert doc["radius"] == pytest.approx(1.5) and "averaged_extremal" in doc["diagnostics"]
    doc = json.loads(run("orbit", "--m", "2")[1])
    assert doc["omega_sq_plus"] == pytest.approx(8 / 9, abs=1e-12)


def test_scan_potential_csv(tmp_path):
    target = tmp_path / "scan.csv"
    code, out, _ = run("orbit", "--h", "2", "--scan-potential", "--samples", "11", "--out", str(target))
    assert code == 0 and out == ""
    raw = target.read_bytes()
    assert raw.startswith(b"rho,omega_sq_plus,omega_sq_minus\r\n")
    rows = list(csv.reader(io.StringIO(raw.decode())))
    assert len(rows) == 12 and all(len(r) == 3 for r in rows)


def test_output_is_byte_deterministic():
    a = run("orbit", "--h", "2.5", "--seed", "4")[1]
    b = run("orbit", "--h", "2.5", "--seed", "4")[1]
    assert a == b


def test_modes_axis_vector():
    doc = json.loads(run("modes", "--k", "0,0,1")[1])
    assert doc["e0"] == [0.0, 0.0, 1.0]
    assert len(doc["e_plus"]) == 3 and all(len(z) == 2 for z in doc["e_plus"])


def test_modes_zero_k_is_error():
    code, _, err = run("modes", "--k", "0,0,0")
    assert code == 1 and "ZeroWaveVector" in err


def test_modes_bad_vector_is_usage_error():
    code, _, _ = run("modes", "--k", "1,2")
    assert code == 2


def test_check_gravity_passes_and_csv_format():
    code, out, _ = run("check", "gravity", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0].keys() == {"suite", "name", "max_deviation", "tolerance", "status"}
    assert {r["status"] for r in rows} == {"pass"}


def test_check_impossible_tolerance_fails():
    code, out, err = run("check", "gravity", "--tolerance", "1e-30")
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "check failed: gravity/" in err and "deviation" in err


def test_config_tolerances_apply(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 1, "tolerances": {"classical_*": 1e-40}}))
    code, _, err = run("check", "gravity", "--config", str(cfg))
    assert code == 1 and "classical_" in err


@pytest.mark.parametrize("content", ["{not json", "[]", '{"seed": -1}', '{"tolerances": {"x": 0}}', '{"colour": 1}'])
def test_malformed_config_exit_2(tmp_path, content):
    cfg = tmp_path / "c.json"
    cfg.write_text(content)
    code, _, err = run("--config", str(cfg), "orbit", "--h", "2")
    assert code == 2 and "ConfigError" in err


def test_missing_config_exit_2():
    assert run("orbit", "--h", "2", "--config", "/nonexistent/cfg.json")[0] == 2


def test_run_config_validation():
    assert RunConfig.from_mapping({"seed": 3, "output_format": "csv"}).seed == 3
    with pytest.raises(ConfigError):
        RunConfig(output_format="xml")


def test_field_synth_info_convert(tmp_path):
    coeffs = tmp_path / "modes.json"
    coeffs.write_text(json.dumps({"modes": [{"k": [1, 0, 0], "i": 1, "b": [1.0, 0.5]}]}))
    field_bin = tmp_path / "f.bin"
    code, out, _ = run("field", "synth", str(coeffs), "--n", "8", "--field-out", str(field_bin))
    doc = json.loads(out)
    assert code == 0 and field_bin.exists()
    # Parseval: box energy equals omega |b|^2
    assert doc["J0"] == pytest.approx(1.25, rel=1e-12)
    assert doc["J0_coefficients"] == pytest.approx(1.25, rel=1e-12)
    field_csv = tmp_path / "f.csv"
    assert run("field", "convert", str(field_bin), str(field_csv))[0] == 0
    info_bin = json.loads(run("field", "info", str(field_bin))[1])
    info_csv = json.loads(run("field", "info", str(field_csv))[1])
    assert info_bin == info_csv


def test_field_synth_incommensurate_mode(tmp_path):
    coeffs = tmp_path / "modes.json"
    coeffs.write_text(json.dumps({"modes": [{"k": [0.5, 0, 0], "i": 1, "b": [1.0, 0.0]}]}))
    code, _, err = run("field", "synth", str(coeffs), "--n", "8")
    assert code == 1 and "IncommensurateMode" in err


def test_medium_check_vacuum_profile(tmp_path):
    prof = tmp_path / "vac.json"
    prof.write_text(json.dumps({"eps_r": "1", "mu_r": "1"}))
    code, out, _ = run("medium", "check", str(prof))
    doc = json.loads(out)
    assert code == 0
    assert doc["spin_orbit"] == {"printed": 0.0, "corrected": 0.0}


def test_medium_check_bad_expression(tmp_path):
    prof = tmp_path / "bad.json"
    prof.write_text(json.dumps({"eps_r": "1 + * 2"}))
    code, _, err = run("medium", "check", str(prof))
    assert code == 2 and "ExpressionError" in err


def test_medium_check_negative_profile(tmp_path):
    prof = tmp_path / "neg.json"
    prof.write_text(json.dumps({"eps_r": "-2"}))
    code, _, err = run("medium", "check", str(prof))
    assert code == 1 and "NonPositiveMedium" in err


def test_check_symmetries_json_array():
    code, out, _ = run("check-symmetries")
    doc = json.loads(out)
    assert code == 0 and isinstance(doc, list) and all("max_deviation" in r for r in doc)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "photon_spinor", "orbit", "--h", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "rho_plus" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "photon_spinor", "orbit", "--h", "1"], capture_output=True, text=True)
    assert proc.returncode == 1
