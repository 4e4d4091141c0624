import os
from pathlib import Path

import pytest
from click.testing import CliRunner

from chirpedqpm.cli import main

BUNDLED = ["fig2a_collinear_47pct", "fig2b_noncollinear_10pct", "fig3_tuning_curve",
           "fig5_detected_snspd", "fig6_detected_pmt", "fig7_phase_and_compression"]


@pytest.fixture()
def runner():
    return CliRunner()


def test_list_bundled(runner):
    res = runner.invoke(main, ["list"])
    assert res.exit_code == 0
    for name in BUNDLED:
        assert name in res.output
    assert "[bundled]" in res.output


def test_run_by_name_with_points_override(runner, tmp_path):
    out = tmp_path / "o"
    res = runner.invoke(main, ["run", "fig2b_noncollinear_10pct",
                               "--out", str(out), "--points", "2048"])
    assert res.exit_code == 0, res.output
    files = sorted(p.name for p in out.iterdir())
    assert files == ["plot.gp", "sfg_perfect.csv", "spectrum.csv", "summary.txt"]
    summary = (out / "summary.txt").read_text()
    for key in ("bandwidth_50pct_thz", "band_edge_lo_nm", "band_edge_hi_nm",
                "fwhm_fs_perfect", "cycles_perfect"):
        assert key in summary
    text = (out / "spectrum.csv").read_text()
    assert text.startswith("# chirpedqpm ")
    assert "points=2048" in text


def test_runs_are_byte_identical(runner, tmp_path):
    outs = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        res = runner.invoke(main, ["run", "fig2b_noncollinear_10pct",
                                   "--out", str(out), "--points", "1024"])
        assert res.exit_code == 0, res.output
        outs.append(out)
    for f in sorted(p.name for p in outs[0].iterdir()):
        assert (outs[0] / f).read_bytes() == (outs[1] / f).read_bytes(), f


def test_seedless_drops_version_echo(runner, tmp_path):
    out = tmp_path / "s"
    res = runner.invoke(main, ["run", "fig2b_noncollinear_10pct", "--out", str(out),
                               "--points", "512", "--seedless"])
    assert res.exit_code == 0, res.output
    text = (out / "spectrum.csv").read_text()
    assert "chirpedqpm 0" not in text
    assert text.startswith("# scenario:")


def test_malformed_scenario_exit_2_no_outputs(runner, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: broken\noutputs: [spectrum]\n")   # no device section
    out = tmp_path / "never"
    res = runner.invoke(main, ["run", str(bad), "--out", str(out)])
    assert res.exit_code == 2
    assert "device" in res.output
    assert not out.exists()


def test_unknown_output_rejected(runner, tmp_path):
    bad = tmp_path / "bad2.yaml"
    bad.write_text(
        "name: broken2\n"
        "device: {medium: mgslt, length_mm: 20, lambda0_um: 8.0,"
        " eta_rad_per_cm2: 367.112, pump_nm: 532}\n"
        "outputs: [spectrogram]\n")
    res = runner.invoke(main, ["run", str(bad)])
    assert res.exit_code == 2
    assert "spectrogram" in res.output


def test_physics_error_exit_3(runner, tmp_path):
    sc = tmp_path / "phys.yaml"
    sc.write_text(
        "name: phys\n"
        "device: {medium: mgslt, length_mm: 20, lambda0_um: 8.0,"
        " eta_rad_per_cm2: 367.112, pump_nm: 532}\n"
        "geometry: {phi_deg: 0.25}\n"
        "band: {lambda_min_um: 0.45, lambda_max_um: 0.50, points: 64}\n"
        "compensator: {model: identity}\n"
        "scheme: noncollinear\n"
        "outputs: [sfg_trace]\n")
    out = tmp_path / "never3"
    res = runner.invoke(main, ["run", str(sc), "--out", str(out)])
    assert res.exit_code == 3
    assert not out.exists()


def test_user_scenario_shadows_bundled(runner, tmp_path, monkeypatch):
    user = tmp_path / "scenarios"
    user.mkdir()
    (user / "mine.yaml").write_text(
        "name: fig3_tuning_curve\n"
        "description: shadowed by a user file\n"
        "device: {medium: mgslt, length_mm: 20, lambda0_um: 8.0,"
        " eta_rad_per_cm2: 367.112, pump_nm: 532}\n"
        "tuning:\n"
        "  lambda_nm: {min: 1000, max: 1100, points: 5}\n"
        "  phi_deg: {min: 0.0, max: 0.3, points: 3}\n"
        "outputs: [tuning_curve]\n")
    monkeypatch.setenv("CHIRPEDQPM_SCENARIO_PATH", str(user))
    res = runner.invoke(main, ["list"])
    assert res.exit_code == 0
    assert res.output.count("fig3_tuning_curve") == 1
    line = [l for l in res.output.splitlines() if "fig3_tuning_curve" in l][0]
    assert "[user]" in line


def test_validate_command(runner, tmp_path):
    ok = tmp_path / "ok.yaml"
    ok.write_text(
        "name: okname\n"
        "device: {medium: mgslt, length_mm: 20, lambda0_um: 8.0,"
        " lambda_end_um: 8.825, pump_nm: 532}\n"
        "band: {lambda_min_um: 0.9, lambda_max_um: 1.3, points: 128}\n"
        "outputs: [spectrum]\n")
    res = runner.invoke(main, ["validate", str(ok)])
    assert res.exit_code == 0 and "ok: okname" in res.output
    res = runner.invoke(main, ["validate", str(tmp_path / "missing.yaml")])
    assert res.exit_code == 2


def parse_summary(path):
    out = {}
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") or "=" not in line:
            continue
        k, v = line.split("=", 1)
        out[k.strip()] = float(v)
    return out


def test_fig2b_summary_values_at_full_resolution(runner, tmp_path):
    out = tmp_path / "full"
    res = runner.invoke(main, ["run", "fig2b_noncollinear_10pct", "--out", str(out)])
    assert res.exit_code == 0, res.output
    s = parse_summary(out / "summary.txt")
    assert abs(s["fwhm_fs_perfect"] - 4.4) <= 0.44
    assert abs(s["cycles_perfect"] - 1.2) <= 0.15
    assert abs(s["bandwidth_50pct_thz"] - 194.0) <= 0.05 * 194.0


def test_every_scenario_runs_inside_budget(runner, tmp_path):
    import time

    for name in BUNDLED:
        t0 = time.monotonic()
        res = runner.invoke(main, ["run", name, "--out", str(tmp_path / name)])
        elapsed = time.monotonic() - t0
        assert res.exit_code == 0, f"{name}: {res.output}"
        assert elapsed < 60.0, f"{name} took {elapsed:.1f} s"


def test_tuning_csv_layout(runner, tmp_path):
    out = tmp_path / "t"
    res = runner.invoke(main, ["run", "fig3_tuning_curve", "--out", str(out)])
    assert res.exit_code == 0, res.output
    lines = [l for l in (out / "tuning_curve.csv").read_text().splitlines()
             if not l.startswith("#")]
    head = lines[0].split(",")
    assert head[0] == "lambda_nm_vs_phi_deg"
    assert float(head[1]) == -0.6 and float(head[-1]) == 0.6
    assert float(lines[1].split(",")[0]) == 750.0
