import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from qedmag import cli, moment
from qedmag.optics import PhotonKinematics


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scan_two_points_header_first():
    code, out, err = run("scan", "--b-min", "0.1", "--b-max", "1", "--points", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:3] == ["b", "n_par", "n_perp"]
    assert len(lines) == 3
    rows = parse_csv(out)
    assert float(rows[0]["b"]) == 0.1 and float(rows[1]["b"]) == 1.0
    assert "# units" in err


def test_scan_values_match_library():
    code, out, _ = run("scan", "--b-min", "1", "--b-max", "2", "--points", "2", "--columns", "b,mu_exact,n_perp")
    rows = parse_csv(out)
    assert float(rows[0]["mu_exact"]) == moment.mu_exact(1.0).mu_reduced
    assert float(rows[1]["n_perp"]) > 1


def test_csv_and_json_agree():
    args = ["scan", "--b-min", "0.2", "--b-max", "25", "--points", "7", "--log"]
    _, out_csv, _ = run(*args)
    _, out_json, _ = run(*args, "--format", "json")
    rows_csv = parse_csv(out_csv)
    rows_json = json.loads(out_json)
    assert len(rows_csv) == len(rows_json) == 7
    for a, b in zip(rows_csv, rows_json):
        for key in cli.DEFAULT_COLUMNS:
            assert float(a[key]) == b[key]


def test_scan_is_deterministic():
    args = ["scan", "--points", "20", "--columns", ",".join(k for k in cli.UNITS if k not in ("out_of_domain", "error"))]
    assert run(*args)[1] == run(*args)[1]


def test_scan_flags_failed_points_without_aborting():
    code, out, _ = run("scan", "--b-min", "0", "--b-max", "1", "--points", "3")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 3
    assert rows[0]["mu_exact"] == "" and "mu_exact" in rows[0]["error"]
    assert rows[0]["h_reduced"] == "1"
    assert rows[1]["error"] == ""


def test_scan_validity_flags():
    _, out, _ = run("scan", "--b-min", "0.1", "--b-max", "10", "--points", "2", "--columns", "b,mu_weak,mu_strong")
    rows = parse_csv(out)
    assert rows[0]["out_of_domain"] == "mu_strong"
    assert rows[1]["out_of_domain"] == "mu_weak"


def test_full_precision_output():
    _, out, _ = run("scan", "--b-min", "0.3", "--b-max", "0.7", "--points", "2", "--columns", "b,n_perp")
    value = parse_csv(out)[0]["n_perp"]
    assert len(value.replace(".", "")) >= 17


def test_faraday_uses_length_and_k():
    _, out, _ = run(
        "scan", "--b-min", "0.5", "--b-max", "1", "--points", "2", "--columns", "b,delta_n,faraday",
        "--length", "1e6", "--k-over-m", "0.1",
    )
    row = parse_csv(out)[1]
    assert float(row["faraday"]) == pytest.approx(1e5 * float(row["delta_n"]), rel=1e-15)


@pytest.mark.parametrize(
    "argv",
    [
        ("scan", "--b-min", "2", "--b-max", "1"),
        ("scan", "--points", "1"),
        ("scan", "--b-min", "0", "--log"),
        ("scan", "--columns", "b,nonsense"),
        ("scan", "--theta", "5"),
        ("scan", "--points", "two"),
        ("invert", "abc"),
        ("scan", "--config", "/nonexistent/file"),
    ],
)
def test_invalid_requests_exit_2(argv):
    code, _, err = run_exit(*argv)
    assert code == 2
    assert "usage" in err


def run_exit(*argv):
    # argparse rejects malformed numbers by raising SystemExit(2)
    err = io.StringIO()
    real = sys.stderr
    sys.stderr = err
    try:
        code, _, e = run(*argv)
        return code, "", e
    except SystemExit as exc:
        return exc.code, "", err.getvalue()
    finally:
        sys.stderr = real


def test_figure1_preset():
    code, out, _ = run("figure1")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 300
    assert list(rows[0]) == ["b", "h_reduced"]
    assert float(rows[0]["b"]) == 0.0 and float(rows[-1]["b"]) == 30.0
    h = [float(r["h_reduced"]) for r in rows]
    assert h[0] == 1.0
    assert all(y - x <= 1e-12 for x, y in zip(h, h[1:]))
    assert all(h[i + 1] - 2 * h[i] + h[i - 1] <= 1e-12 for i in range(1, len(h) - 1))


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\npoints = 3\nb-min=1\nb_max = 2\ncolumns = b,n_perp\ntheta=0\n")
    _, out, _ = run("scan", "--config", str(cfg))
    rows = parse_csv(out)
    assert len(rows) == 3 and float(rows[0]["b"]) == 1.0
    assert float(rows[0]["n_perp"]) == 1.0  # theta = 0 from the file
    _, out, _ = run("scan", "--config", str(cfg), "--points", "4", "--theta", "1.5")
    rows = parse_csv(out)
    assert len(rows) == 4 and float(rows[0]["n_perp"]) > 1.0


def test_bad_config_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("points 3\n")
    code, _, err = run("scan", "--config", str(cfg))
    assert code == 2 and "key=value" in err


def test_validate_passes():
    code, out, _ = run("validate")
    assert code == 0
    assert "all checks passed" in out
    for key in ("three_route", "ratio_8_3", "asymptote_gap", "figure1"):
        assert key in out


def test_validate_json_lists_each_check_once():
    code, out, _ = run("validate", "--format", "json")
    report = json.loads(out)
    keys = [c["key"] for c in report["checks"]]
    assert len(keys) == len(set(keys))
    assert set(cli.validation.CHECK_KEYS) <= set(keys)
    assert all(c["reference"] for c in report["checks"])
    ratio = next(c for c in report["checks"] if c["key"] == "ratio_8_3")
    assert "measured ratio" in ratio["detail"]


def test_validate_tolerance_override_fails():
    code, out, _ = run("validate", "--tol-three-route", "1e-16")
    assert code == 1
    assert "failed: three_route" in out


def test_validate_tolerance_from_config(tmp_path):
    cfg = tmp_path / "tol.cfg"
    cfg.write_text("tol-three-route = 1e-16\n")
    assert run("validate", "--config", str(cfg))[0] == 1
    assert run("validate", "--config", str(cfg), "--tol-three-route", "1e-8")[0] == 0


def _mu_bohr_for(b, kin=PhotonKinematics()):
    return moment.mu_strong(b, kin).mu_bohr


def test_invert_round_trip_b5():
    code, out, _ = run("invert", "%.17g" % _mu_bohr_for(5.0), "--branch", "-1")
    assert code == 0
    b = float(out.split("b = ")[1].split()[0])
    assert b == pytest.approx(5.0, rel=1e-9)
    assert "residual" in out


def test_invert_without_branch_lists_both():
    code, out, _ = run("invert", "%.17g" % _mu_bohr_for(5.0))
    assert code == 0
    assert "branch 0:" in out and "branch -1:" in out


def test_invert_json(tmp_path):
    code, out, _ = run("invert", "%.17g" % _mu_bohr_for(2.0), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["solutions"][0]["b"] == pytest.approx(2.0, rel=1e-9)


def test_invert_asymptote_diagnostic():
    mu_bohr = 2 * moment.asymptote() * 0.1
    code, out, err = run("invert", repr(mu_bohr), "--branch", "-1")
    assert code == 1
    assert "no finite solution" in err
    assert "branch 0: b =" in err and "branch -1: no finite solution" in err


def test_invert_out_of_range():
    code, _, err = run("invert", "1e-6")
    assert code == 1
    assert err.count("no finite solution") >= 2


def test_invert_zero_angle_is_usage_error():
    code, _, err = run("invert", "1e-4", "--theta", "0")
    assert code == 2


def test_console_script():
    exe = shutil.which("qedmag")
    cmd = [exe] if exe else [sys.executable, "-m", "qedmag.cli"]
    proc = subprocess.run(cmd + ["scan", "--points", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("b,")
