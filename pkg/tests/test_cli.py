"""Command-line interface: exit codes, output routing, determinism."""

import math
import shutil
import subprocess

import pytest

from shadowfit.cli import main

FAST_FIT = ["--angle-grid", "180", "--u-grid", "512", "--refine-iters", "12"]


def _kv(text):
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 2:
            out[parts[0]] = parts[-1]
    return out


def test_angles_text(capsys):
    assert main(["angles", "--r", "0.51"]) == 0
    vals = _kv(capsys.readouterr().out)
    assert abs(float(vals["theta0"]) - 0.7654008294242978) < 1e-12
    assert abs(float(vals["theta1"]) - 1.115713484147977) < 1e-12
    assert abs(float(vals["theta2"]) - 0.9837526855562531) < 1e-12


def test_angles_csv_stdout(capsys):
    assert main(["angles", "--r", "0.51", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "theta0,theta1,theta2"
    t0, t1, t2 = (float(x) for x in lines[1].split(","))
    assert abs(t0 - 0.7654008294242978) < 1e-12 and t2 < t1


def test_angles_out_file_defaults_to_csv(tmp_path, capsys):
    path = tmp_path / "angles.csv"
    assert main(["angles", "--r", "0.51", "--out", str(path)]) == 0
    main(["angles", "--r", "0.51", "--format", "csv"])
    assert path.read_text() == capsys.readouterr().out
    text_path = tmp_path / "angles.txt"
    assert main(["angles", "--r", "0.51", "--out", str(text_path), "--format", "text"]) == 0
    assert "theta0" in text_path.read_text().splitlines()[0]


def test_angles_domain_error_exit_2(capsys):
    assert main(["angles", "--r", "0.6"]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_3d_verified(capsys):
    code = main(["verify-3d", "--r", "0.51", "--theta-grid", "12"] + FAST_FIT)
    assert code == 0
    vals = _kv(capsys.readouterr().out)
    assert vals["verdict"] == "verified"


def test_verify_3d_fails_past_family(capsys, tmp_path):
    # default fit flags here: a coarser angular grid can miss the narrow
    # violation dip and falsely verify
    path = tmp_path / "bad.csv"
    code = main(["verify-3d", "--r", "0.52", "--theta-grid", "60", "--out", str(path)])
    assert code == 1
    lines = path.read_text().splitlines()
    assert lines[0] == "theta,strategy,strategy_margin,blind_angle,blind_margin"
    assert len(lines) == 61


def test_no3drot(capsys, tmp_path):
    args = ["no3drot", "--r", "0.51", "--phi-grid", "5", "--rotations", "50", "--resolution", "48"]
    assert main(args) == 0
    vals = _kv(capsys.readouterr().out)
    assert vals["verdict"] == "verified"
    assert abs(float(vals["min_escape_margin"]) - 0.02) < 1e-12
    assert abs(float(vals["expected_margin"]) - 0.02) < 1e-15
    assert vals["fitting_rotation_found"] == "0"
    path = tmp_path / "wit.csv"
    assert main(args + ["--out", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "phi,x,y,z,margin"
    assert len(lines) == 6
    for line in lines[1:]:
        assert abs(float(line.split(",")[4]) - 0.02) < 1e-12


def test_no3drot_csv_deterministic(tmp_path):
    args = ["no3drot", "--r", "0.51", "--phi-grid", "4", "--rotations", "20", "--resolution", "48"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_nd_small(capsys):
    code = main(["verify-nd", "--sections", "6", "--rotations", "10"] + FAST_FIT)
    assert code == 0
    vals = _kv(capsys.readouterr().out)
    assert vals["verdict"] == "verified"


def test_verify_nd_bad_params(capsys):
    assert main(["verify-nd", "--delta", "0.5"]) == 2
    assert "error:" in capsys.readouterr().err


def test_volume_command(capsys):
    assert main(["volume", "--body", "cylinder:r=0.51,hh=0.51", "--resolution", "32"]) == 0
    vals = _kv(capsys.readouterr().out)
    exact = 2.0 * math.pi * 0.51**3
    assert abs(float(vals["volume"]) - exact) / exact < 1e-10
    assert main(["volume", "--body", "ball:R=2"]) == 0
    vals = _kv(capsys.readouterr().out)
    assert abs(float(vals["volume"]) - (32.0 / 3.0) * math.pi) < 1e-6
    assert main(["volume", "--body", "frobnitz:a=1"]) == 2


def test_mm_report(capsys):
    base = ["mm-report", "--K", "ball:R=0.9", "--L", "ball:R=1", "--resolution", "2"] + FAST_FIT
    assert main(base) == 0
    vals = _kv(capsys.readouterr().out)
    assert vals["satisfied"] == "1"
    assert main(base + ["--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("mode,vol_K,vol_L,satisfied,")
    assert lines[1].startswith("sections,")
    assert main(base + ["--mode", "projections"]) == 0


def test_mm_report_hypothesis_failure(capsys):
    code = main(
        ["mm-report", "--K", "ball:R=1.2", "--L", "ball:R=1", "--resolution", "2"] + FAST_FIT
    )
    assert code == 1
    assert "hypothesis failed" in capsys.readouterr().err


def test_export_curves(capsys):
    assert main(["export-curves", "--r", "0.51", "--theta", "1.2", "--u-grid", "16"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "u,rho_cone,rho_cylinder,rho_cylinder_rot90,rho_cylinder_rot_u0"
    assert len(lines) == 17
    row0 = [float(x) for x in lines[1].split(",")]
    # at u = 0 the slid curve samples the corner angle, the plain curve the cap
    assert abs(row0[2] - 0.51 / math.sin(1.2)) < 1e-12
    assert abs(row0[2] - row0[4]) > 1e-3
    # below pi/4 there is no slide and the two cylinder columns coincide
    assert main(["export-curves", "--r", "0.51", "--theta", "0.5", "--u-grid", "16"]) == 0
    for line in capsys.readouterr().out.splitlines()[1:]:
        vals = line.split(",")
        assert vals[2] == vals[4]


def test_export_curves_validation(capsys):
    assert main(["export-curves", "--r", "0.51", "--theta", "2.0"]) == 2
    assert main(["export-curves", "--r", "0.51", "--theta", "1.0", "--u-grid", "4"]) == 2
    capsys.readouterr()


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])


@pytest.mark.skipif(shutil.which("shadowfit") is None, reason="console script not installed")
def test_console_script_smoke():
    proc = subprocess.run(
        ["shadowfit", "angles", "--r", "0.51"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "theta0" in proc.stdout
