"""Tests for the command-line interface."""

import json
import math
import subprocess
import sys

import pytest

from igscatter.cli import main
from igscatter.oracle import OracleReport

CFG = dict(mu_reduced=0.5, V=0.01, d=0.1, k0=1.0, sigma0=0.01, R0=5.0)


@pytest.fixture()
def cfg_path(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(CFG))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPurityCommand:
    def test_csv_header_and_row(self, capsys, cfg_path):
        code, out, _ = run_cli(capsys, ["purity", "--config", cfg_path])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == (
            "k0,sigma0,R0,V,d,r_IG,theta_exact,theta_lowE,P_general,P_lowE,"
            "regime_low_energy,regime_weak_correlation"
        )
        fields = lines[1].split(",")
        assert float(fields[0]) == 1.0
        assert float(fields[5]) == pytest.approx(0.01)
        assert 0.99 < float(fields[8]) < 1.0

    def test_free_potential_unit_purity(self, capsys, cfg_path):
        code, out, _ = run_cli(capsys, ["purity", "--config", cfg_path, "--V", "0"])
        row = out.strip().splitlines()[1].split(",")
        assert float(row[8]) == 1.0
        assert float(row[9]) == 1.0

    def test_flag_overrides_config(self, capsys, cfg_path):
        _, out, _ = run_cli(capsys, ["purity", "--config", cfg_path, "--k0", "2.0"])
        assert out.splitlines()[1].startswith("2.0,")

    def test_json_format(self, capsys, cfg_path):
        code, out, _ = run_cli(capsys, ["purity", "--config", cfg_path, "--format", "json"])
        rows = json.loads(out)
        assert rows[0]["k0"] == 1.0

    def test_bad_config_exit_code(self, capsys):
        code, _, err = run_cli(capsys, ["purity", "--config", "/no/such/file.json"])
        assert code == 2
        assert "error" in err

    def test_unknown_key_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(dict(CFG, nonsense=1)))
        code, _, _ = run_cli(capsys, ["purity", "--config", str(bad)])
        assert code == 2


class TestPhaseShiftCommand:
    def test_row(self, capsys, cfg_path):
        code, out, _ = run_cli(capsys, ["phase-shift", "--config", cfg_path])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("k0,d,V,r_IG,k_in,k_out,theta_exact")
        fields = lines[1].split(",")
        assert float(fields[6]) == pytest.approx(-3.3265405076274336e-06, rel=1e-12)


class TestDurationCommand:
    def test_zero_correlation(self, capsys, cfg_path):
        code, out, _ = run_cli(capsys, ["duration", "--config", cfg_path, "--r", "0"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k0,sigma0,r,epsilon,eta_delta,r_upper_bound,duration"
        assert float(lines[1].split(",")[6]) == 0.0

    def test_numeric_column(self, capsys, cfg_path):
        code, out, _ = run_cli(
            capsys,
            ["duration", "--config", cfg_path, "--sigma0", "0.001", "--r", "1e-6", "--numeric"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].endswith(",duration_numeric")
        value = float(lines[1].split(",")[7])
        assert 1e-4 < value < 1e-3

    def test_numerical_failure_exit_code(self, capsys, cfg_path):
        # unreachable momentum gap: r passes the bound but exceeds the band
        code, _, err = run_cli(
            capsys,
            ["duration", "--config", cfg_path, "--sigma0", "0.1", "--r", "0.01", "--numeric"],
        )
        assert code == 3
        assert "numerical failure" in err


class TestGeodesicCommand:
    def test_pure_sigma_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, ["geodesic", "--sigma", "1", "--dsigma", "1", "--tau-max", "1"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "tau,mu_k1,mu_k2,sigma,dmu_k1,dmu_k2,dsigma,speed2"
        last = lines[-1].split(",")
        assert float(last[0]) == 1.0
        assert float(last[3]) == pytest.approx(math.e, abs=1e-8)

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["geodesic", "--sigma", "1", "--dsigma", "1", "--tau-max", "0.5", "--format", "json"],
        )
        data = json.loads(out)
        assert data["speed_drift"] <= 1e-8
        assert data["samples"][0]["sigma"] == 1.0

    def test_invalid_state_exit_code(self, capsys):
        code, _, _ = run_cli(capsys, ["geodesic", "--sigma", "-1", "--tau-max", "1"])
        assert code == 2


class TestComplexityCommand:
    def test_json_report(self, capsys, cfg_path):
        code, out, _ = run_cli(
            capsys, ["complexity", "--config", cfg_path, "--sigma0", "0.1", "--r", "0.5"]
        )
        assert code == 0
        data = json.loads(out)
        assert set(data) == {"c_uncorr", "c_corr", "ratio", "predicted_ratio", "r_recovered"}
        assert data["predicted_ratio"] == pytest.approx(0.5773502691896257, rel=1e-12)
        assert data["ratio"] == pytest.approx(data["predicted_ratio"], rel=2e-2)


class TestSweepCommand:
    def test_purity_decreases_linearly_in_potential(self, capsys, cfg_path):
        code, out, _ = run_cli(
            capsys,
            ["sweep", "--config", cfg_path, "--param", "V", "--from", "0.001",
             "--to", "0.005", "--steps", "5"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        purities = [float(line.split(",")[9]) for line in lines[1:]]
        diffs = [b - a for a, b in zip(purities, purities[1:])]
        assert all(d < 0 for d in diffs)
        # equal V steps give equal purity decrements in the linear regime
        assert max(diffs) - min(diffs) <= 1e-12

    def test_correlation_sweep_adjusts_potential(self, capsys, cfg_path):
        code, out, _ = run_cli(
            capsys,
            ["sweep", "--config", cfg_path, "--param", "r", "--from", "0.001",
             "--to", "0.01", "--steps", "3"],
        )
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        assert [float(r[5]) for r in rows] == pytest.approx([0.001, 0.0055, 0.01])

    def test_log_scale_validation(self, capsys, cfg_path):
        code, _, _ = run_cli(
            capsys,
            ["sweep", "--config", cfg_path, "--param", "V", "--from", "-1",
             "--to", "1", "--steps", "3", "--log"],
        )
        assert code == 2

    def test_byte_identical_reruns(self, tmp_path, cfg_path):
        argv = ["sweep", "--config", cfg_path, "--param", "V", "--from", "0.001",
                "--to", "0.01", "--steps", "7"]
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestVerifyCommand:
    def test_passes_and_emits_json(self, capsys):
        code, out, _ = run_cli(capsys, ["verify"])
        assert code == 0
        reports = json.loads(out)
        assert all(rep["passed"] for rep in reports)
        names = [rep["check_name"] for rep in reports]
        assert names == sorted(names)

    def test_failure_exit_code_names_checks(self, capsys, monkeypatch):
        import igscatter.cli as cli_mod

        fake = [OracleReport("broken_check", 1.0, 1.0, 1e-8, False)]
        monkeypatch.setattr(cli_mod._oracle, "run_all", lambda: fake)
        monkeypatch.setattr(cli_mod._oracle, "consistency_suite", lambda: [])
        code, out, err = run_cli(capsys, ["verify"])
        assert code == 1
        assert "broken_check" in err


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "igscatter", "geodesic", "--sigma", "1", "--dsigma", "1",
         "--tau-max", "0.25"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.startswith("tau,")
