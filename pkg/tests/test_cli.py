import json
import math

import numpy as np

import oracles
from qcharm.cli import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_scenarios_listing(capsys):
    code, out, _ = run_cli(["scenarios"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema_version"] == "1"
    assert [c["name"] for c in payload["catalog"]][:2] == ["identity", "affine"]


def test_bound_command_matches_oracle(capsys):
    args = ["bound", "--K", "1", "--mu", "1", "--upsilon", "1", "--lambda", "1.5708", "--c-gamma", "1", "--length", "6.2832"]
    code, out, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert abs(payload["alpha"] - 0.148454) < 1e-4
    assert payload["alpha"] == oracles.holder_exponent(1.0, 1.5708, 1.0)
    assert payload["log_L"] == oracles.lipschitz_log(1.0, 1.0, 1.0, 1.5708, 1.0, 6.2832)
    assert payload["checks"][0]["passed"]


def test_bound_zero_holder_constant(capsys):
    args = ["bound", "--K", "1", "--mu", "1", "--upsilon", "1", "--lambda", "1.5", "--c-gamma", "0", "--length", "6.2832"]
    code, out, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["L"] == 0.0
    assert payload["log_L"] is None


def test_constants_ellipse(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    args = ["constants", "--curve", "ellipse", "--a", "1.2", "--b", "0.8", "--out", str(out_path)]
    code, _, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    payload = json.loads(out_path.read_text())
    consts = payload["constants"]
    assert abs(consts["max_curvature"] - 1.875) < 1e-4
    assert abs(consts["length"] - oracles.ellipse_perimeter(1.2, 0.8)) < 1e-8
    assert abs(consts["chord_arc"] - 1.9831799486613273) < 1e-4
    assert all(consts["converged"].values())


def test_constants_from_csv(capsys, tmp_path):
    t = 2 * math.pi * np.arange(128) / 128
    rows = np.column_stack([t, 1.2 * np.cos(t), 0.8 * np.sin(t)])
    csv_path = tmp_path / "samples.csv"
    np.savetxt(csv_path, rows, delimiter=",")
    args = ["constants", "--curve", "csv", "--samples", str(csv_path), "--nodes", "128"]
    code, out, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert abs(payload["constants"]["length"] - oracles.ellipse_perimeter(1.2, 0.8)) < 1e-6


def test_constants_csv_format(capsys):
    args = ["constants", "--curve", "circle", "--format", "csv"]
    code, out, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert len(lines) == 2
    header = lines[0].split(",")
    assert "chord_arc" in header and "converged_length" in header


def test_verify_identity_exit_zero(capsys, tmp_path):
    out_path = tmp_path / "v.json"
    args = ["verify", "--scenario", "identity", "--out", str(out_path)]
    code, _, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    payload = json.loads(out_path.read_text())
    assert payload["all_passed"] is True
    assert all(rec["margin"] >= -1e-9 for rec in payload["checks"])
    from qcharm.report import validate_report

    validate_report(payload, "verify")


def test_determinism_byte_identical(capsys):
    args = ["bound", "--K", "1.3", "--mu", "0.5", "--upsilon", "1", "--lambda", "2.0", "--c-gamma", "0.7", "--length", "5.5"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2

    args = ["constants", "--curve", "ellipse", "--a", "1.1", "--b", "0.9", "--nodes", "128"]
    _, out3, _ = run_cli(args, capsys)
    _, out4, _ = run_cli(args, capsys)
    assert out3 == out4


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"K": 1.0, "mu": 1.0, "upsilon": 1.0, "lambda": 1.5708, "c_gamma": 1.0, "length": 6.2832}))
    code, out, _ = run_cli(["bound", "--config", str(cfg)], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["inputs"]["K"] == 1.0

    # explicit flags win over the file
    code, out, _ = run_cli(["bound", "--config", str(cfg), "--K", "2.0"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["inputs"]["K"] == 2.0


def test_unreadable_config_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(["bound", "--config", str(bad)], capsys)
    assert code == EXIT_CONFIG
    assert "unreadable config" in err


def test_bad_bound_inputs_exit_two(capsys):
    args = ["bound", "--K", "0.5", "--mu", "1", "--upsilon", "1", "--lambda", "1.5", "--c-gamma", "1", "--length", "6.28"]
    code, _, err = run_cli(args, capsys)
    assert code == EXIT_CONFIG
    assert "error" in err


def test_fourier_without_coeffs_exits_two(capsys):
    code, _, err = run_cli(["verify", "--scenario", "fourier"], capsys)
    assert code == EXIT_CONFIG


def test_verify_fourier_from_coeff_file(capsys, tmp_path):
    coeffs = {
        "cos_coeffs": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.05, 0.0]],
        "sin_coeffs": [[0.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, -0.05]],
    }
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps(coeffs))
    out_path = tmp_path / "four.csv"
    args = ["verify", "--scenario", "fourier", "--coeffs", str(path), "--out", str(out_path), "--format", "csv"]
    code, _, _ = run_cli(args, capsys)
    assert code == EXIT_OK
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "name,lhs,rhs,margin,passed"
    assert len(lines) >= 7  # one row per check


def test_unconverged_constants_exit_three(capsys, tmp_path):
    t = 2 * math.pi * np.arange(256) / 256
    noisy = np.column_stack([t, np.cos(t) + 1e-3 * np.cos(127 * t), np.sin(t)])
    csv_path = tmp_path / "noisy.csv"
    np.savetxt(csv_path, noisy, delimiter=",")
    args = ["constants", "--curve", "csv", "--samples", str(csv_path), "--nodes", "256"]
    code, _, _ = run_cli(args, capsys)
    assert code == EXIT_NUMERIC
