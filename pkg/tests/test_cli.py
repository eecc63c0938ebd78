from __future__ import annotations

import json
import subprocess
import sys

import pytest

from essnorm.cli import main

ZBAR = {"symbol": {"terms": [{"z": 0, "zbar": 1, "w": 0, "wbar": 0, "re": "1", "im": "0"}]}}
ZZBAR = {"symbol": {"terms": [{"z": 1, "zbar": 1, "w": 0, "wbar": 0, "re": "1", "im": "0"}]}}


@pytest.fixture
def cfg(tmp_path):
    def write(data) -> str:
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(data) if isinstance(data, dict) else data)
        return str(path)

    return write


def test_check_symbol_admissible(cfg, capsys):
    assert main(["check-symbol", "--config", cfg(ZBAR)]) == 0
    assert "admissible: yes" in capsys.readouterr().out


def test_check_symbol_rejected(cfg, capsys):
    assert main(["check-symbol", "--config", cfg(ZZBAR)]) == 1
    out = capsys.readouterr().out
    assert "admissible: no" in out and "failing family" in out


def test_config_errors_exit_2(cfg, capsys):
    assert main(["check-symbol", "--config", cfg("{not json")]) == 2
    assert main(["check-symbol", "--config", "/nonexistent/cfg.json"]) == 2
    assert main(["verify", "--config", cfg({"quadrature": {"j_values": [9]}})]) == 2
    assert main(["essnorm", "--config", cfg(ZBAR), "--deg", "10", "--tail-starts", "12"]) == 2
    assert main(["essnorm", "--config", cfg(ZBAR), "--tail-starts", "a,b"]) == 2
    assert main(["essnorm", "--config", cfg({**ZBAR, "truncation": {"bogus": 1}})]) == 2
    assert main(["bounds"]) == 2  # symbol block required
    capsys.readouterr()


def test_unknown_quadrature_key_exit_2(cfg, capsys):
    assert main(["verify", "--config", cfg({"quadrature": {"nope": 3}})]) == 2
    assert "unknown quadrature key" in capsys.readouterr().err


def test_verify_exit_zero_and_table(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "bump_mass" in out and "PASS" in out


def test_bounds_json_values(cfg, capsys):
    assert main(["bounds", "--config", cfg(ZBAR), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["lower"] == pytest.approx(0.25, abs=1e-9)
    assert data["bidisk_lower"] == pytest.approx(2 ** -0.5, abs=1e-9)
    assert data["upper"] == pytest.approx(4.663287963194249, abs=1e-9)


def test_essnorm_json_deterministic(cfg, capsys):
    args = ["essnorm", "--config", cfg(ZBAR), "--deg", "16", "--tail-starts", "6,10", "--format", "json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert set(data["bracket"]) == {"lower_est", "upper_est", "table", "sequence"}
    assert data["sandwich"]["passed"] is True
    ks = {row[0] for row in data["bracket"]["table"]}
    assert ks == {6, 10}


def test_essnorm_csv_and_out_file(cfg, tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["essnorm", "--config", cfg(ZBAR), "--deg", "14", "--tail-starts", "6",
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == "section,key,n,value"
    assert any(line.startswith("tail,6,") for line in lines)
    assert any(line.startswith("bracket,lower_est,") for line in lines)
    assert any(line.startswith("sandwich,passed,") for line in lines)


def test_essnorm_table_format(cfg, capsys):
    assert main(["essnorm", "--config", cfg(ZBAR), "--deg", "14", "--tail-starts", "6"]) == 0
    out = capsys.readouterr().out
    assert "lower_est" in out and "sandwich" in out


def test_report_runs_everything(cfg, capsys):
    assert main(["report", "--config", cfg(ZBAR), "--deg", "14", "--tail-starts", "6"]) == 0
    out = capsys.readouterr().out
    assert "admissible: yes" in out
    assert "bracket:" in out
    assert "sandwich: PASS" in out
    assert "verification: PASS" in out


def test_report_inadmissible_exit_1(cfg, capsys):
    assert main(["report", "--config", cfg(ZZBAR)]) == 1
    capsys.readouterr()


def test_config_file_symbol_roundtrip(cfg, capsys):
    data = {"symbol": {"terms": [
        {"z": 0, "zbar": 1, "w": 0, "wbar": 1, "re": "1/2", "im": "-3/4"},
    ]}}
    assert main(["check-symbol", "--config", cfg(data)]) == 0
    assert "z*" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "essnorm.cli", "--help"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "check-symbol" in proc.stdout
