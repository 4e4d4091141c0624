"""Scenario files: validation, execution, and deterministic CSV outputs.

A scenario is a YAML document naming a device, a geometry, a scan band,
optional compensators and an optional instrument block, plus the list of
requested outputs.  Execution computes everything in memory first and only
then writes files, so a failed run leaves no partial outputs.  All numeric
output uses repr round-tripping, making repeated runs byte-identical.
"""

import os
from dataclasses import dataclass
from importlib.resources import files as _pkg_files

import numpy as np
import yaml

from . import __version__
from .biphoton import (SpectralAmplitude, SpectralPhaseCurve, band_edges, bandwidth_thz,
                       mean_photon_number, sample_spectral_phase, spectrum_scan)
from .compensation import (IdentityCompensator, PerfectCompensator, PrismPairCompensator,
                           QuadraticCompensator, apply_compensator, measure_gdd)
from .correlation import fwhm, sfg_collinear, sfg_noncollinear
from .device import Geometry, QpmDevice, design_chirp, tuning_curve
from .errors import ConfigError, DomainError
from .instrument import (AcceptanceWindow, default_detector, detected_spectrum,
                         load_detector_csv, raw_counts_model)
from .media import default_media, load_media_file
from .units import (MM_TO_UM, NM_TO_UM, RAD_PER_CM2_TO_RAD_PER_UM2, cycles,
                    lambda_to_omega, omega_to_thz)

SCENARIO_PATH_ENV = "CHIRPEDQPM_SCENARIO_PATH"

KNOWN_OUTPUTS = ("tuning_curve", "spectrum", "detected_spectrum",
                 "spectral_phase", "sfg_trace", "summary")


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    config: dict
    source: str                     # "bundled" or "user"
    path: str


def _require(cfg: dict, key: str, where: str):
    if key not in cfg:
        raise ConfigError(f"{where}: missing required field {key!r}")
    return cfg[key]


def load_scenario(path, source="user") -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: not valid YAML ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: scenario must be a mapping")
    name = _require(doc, "name", str(path))
    validate_scenario(doc)
    return Scenario(name=str(name), description=str(doc.get("description", "")),
                    config=doc, source=source, path=str(path))


def validate_scenario(doc: dict):
    """Structural checks; raises ConfigError with the offending field named."""
    outputs = _require(doc, "outputs", "scenario")
    if not isinstance(outputs, list) or not outputs:
        raise ConfigError("scenario: outputs must be a nonempty list")
    for o in outputs:
        if o not in KNOWN_OUTPUTS:
            raise ConfigError(f"scenario: unknown output {o!r}")
    _device_config(doc)   # device is always required
    needs_band = {"spectrum", "sfg_trace", "spectral_phase"} & set(outputs)
    if needs_band and "band" not in doc:
        raise ConfigError(f"scenario: outputs {sorted(needs_band)} need a band section")
    if "band" in doc:
        band = doc["band"]
        for key in ("lambda_min_um", "lambda_max_um", "points"):
            _require(band, key, "band")
        if not (0 < float(band["lambda_min_um"]) < float(band["lambda_max_um"])):
            raise ConfigError("band: need 0 < lambda_min_um < lambda_max_um")
        if int(band["points"]) < 2:
            raise ConfigError("band: points must be >= 2")
    if "sfg_trace" in outputs and not doc.get("compensators") and not doc.get("compensator"):
        raise ConfigError("scenario: sfg_trace output requires a compensator section")
    if "detected_spectrum" in outputs and "instrument" not in doc:
        raise ConfigError("scenario: detected_spectrum output requires an instrument section")
    if "tuning_curve" in outputs and "tuning" not in doc:
        raise ConfigError("scenario: tuning_curve output requires a tuning section")
    if doc.get("scheme", "noncollinear") not in ("noncollinear", "collinear"):
        raise ConfigError(f"scenario: unknown scheme {doc['scheme']!r}")


def _device_config(doc: dict) -> dict:
    dev = _require(doc, "device", "scenario")
    for key in ("medium", "length_mm", "lambda0_um", "pump_nm"):
        _require(dev, key, "device")
    if ("eta_rad_per_cm2" in dev) == ("lambda_end_um" in dev):
        raise ConfigError("device: give exactly one of eta_rad_per_cm2 or lambda_end_um")
    return dev


def _load_media(doc: dict) -> dict:
    media = default_media()
    if "media_file" in doc:
        media.update(load_media_file(doc["media_file"]))
    return media


def build_device(doc: dict) -> QpmDevice:
    dev = _device_config(doc)
    media = _load_media(doc)
    key = dev["medium"]
    if key not in media:
        raise ConfigError(f"device: unknown medium {key!r}")
    length_um = float(dev["length_mm"]) * MM_TO_UM
    if "eta_rad_per_cm2" in dev:
        eta = float(dev["eta_rad_per_cm2"]) * RAD_PER_CM2_TO_RAD_PER_UM2
    else:
        eta = design_chirp(float(dev["lambda0_um"]), float(dev["lambda_end_um"]), length_um)
    return QpmDevice(
        medium=media[key],
        length_um=length_um,
        lambda0_um=float(dev["lambda0_um"]),
        eta=eta,
        pump_wavelength_um=float(dev["pump_nm"]) * NM_TO_UM,
        temperature_K=float(dev.get("temperature_K", 293.0)),
    )


def _compensator_entries(doc: dict) -> list:
    if "compensators" in doc:
        entries = doc["compensators"]
    elif "compensator" in doc:
        entries = [doc["compensator"]]
    else:
        return []
    if not isinstance(entries, list):
        raise ConfigError("compensators must be a list")
    return entries


def build_compensator(cfg: dict, device: QpmDevice, amp: SpectralAmplitude,
                      media: dict, phase_curve):
    """Instantiate one compensator entry against the scenario's device spectrum."""
    model = _require(cfg, "model", "compensator")
    omega_c = lambda_to_omega(float(cfg.get("center_nm", 2 * device.pump_wavelength_um * 1e3))
                              * NM_TO_UM)
    if model == "identity":
        return IdentityCompensator()
    if model == "perfect":
        return PerfectCompensator(reference=amp)
    if model == "quadratic":
        gdd = _require(cfg, "gdd_fs2", "quadratic compensator")
        if gdd == "cancel_measured":
            gdd = -measure_gdd(phase_curve, omega_c)
        return QuadraticCompensator(gdd_fs2=float(gdd), omega_c=float(omega_c))
    if model == "prism_pair":
        glass_key = cfg.get("glass", "sf14")
        if glass_key not in media:
            raise ConfigError(f"prism compensator: unknown glass {glass_key!r}")
        design_um = float(cfg.get("design_nm", 2 * device.pump_wavelength_um * 1e3)) * NM_TO_UM
        passes = int(cfg.get("passes", 2))
        sep = cfg.get("separation_mm", 500.0)
        apex_deg = cfg.get("apex_angle_deg")
        kwargs = dict(glass=media[glass_key], design_wavelength_um=design_um,
                      incidence=cfg.get("incidence", "brewster"), passes=passes,
                      temperature_K=device.temperature_K)
        if apex_deg is not None:
            kwargs["apex_angle_rad"] = float(np.radians(float(apex_deg)))
        if sep == "tune_gdd":
            # phase is exactly linear in the separation, so one probe fixes it
            probe = PrismPairCompensator(separation_mm=100.0, **kwargs)
            probe_curve = SpectralPhaseCurve(phase_curve.omega_grid,
                                             probe.phase(phase_curve.omega_grid))
            gdd_per_mm = measure_gdd(probe_curve, omega_c) / 100.0
            device_gdd = measure_gdd(phase_curve, omega_c)
            sep = -device_gdd / gdd_per_mm
            if sep <= 0:
                raise DomainError("prism pair cannot cancel a negative device GDD")
        return PrismPairCompensator(separation_mm=float(sep), **kwargs)
    raise ConfigError(f"unknown compensator model {model!r}")


# ---------------------------------------------------------------- formatting

def _fmt(v) -> str:
    if isinstance(v, (np.floating, float)):
        return repr(float(v))
    return str(v)


def _csv_text(header_lines, columns, names) -> str:
    lines = [f"# {h}" for h in header_lines]
    lines.append("# columns: " + ",".join(names))
    lines.append(",".join(names))
    rows = np.broadcast_arrays(*columns)
    for i in range(rows[0].shape[0]):
        lines.append(",".join(_fmt(c[i]) for c in rows))
    return "\n".join(lines) + "\n"


def _device_echo(doc: dict, device: QpmDevice) -> str:
    return (f"device: medium={doc['device']['medium']} L={device.length_um:g}um "
            f"lambda0={device.lambda0_um:g}um eta={device.eta:g}rad/um^2 "
            f"pump={device.pump_wavelength_um:g}um T={device.temperature_K:g}K")


# ---------------------------------------------------------------- execution

def run_scenario(scenario: Scenario, outdir, points_override=None, seedless=False) -> dict:
    """Execute a validated scenario; returns the summary mapping.

    Files are written under ``outdir`` only after every requested output has
    been computed.
    """
    doc = scenario.config
    outputs = doc["outputs"]
    device = build_device(doc)
    media = _load_media(doc)
    geom = Geometry(float(doc.get("geometry", {}).get("phi_deg", 0.0)))
    kappa = float(doc.get("kappa", 1.0))
    scheme = doc.get("scheme", "noncollinear")
    pad = int(doc.get("pad_factor", 8))

    header = []
    if not seedless:
        from .kernels import BACKEND

        header.append(f"chirpedqpm {__version__} ({BACKEND} kernels)")
    header.append(f"scenario: {scenario.name}")
    header.append(_device_echo(doc, device))
    header.append(f"geometry: phi={geom.phi_deg:g}deg scheme={scheme}")

    summary = {}
    artifacts = {}          # filename -> text

    amp = None
    phase_curve = None
    if "band" in doc:
        band = doc["band"]
        n_points = int(points_override or band["points"])
        amp = spectrum_scan(device, float(band["lambda_min_um"]),
                            float(band["lambda_max_um"]), n_points, geom, kappa=kappa)
        phase_curve = sample_spectral_phase(device, float(band["lambda_min_um"]),
                                            float(band["lambda_max_um"]), n_points, geom)
        header.append(f"band: {band['lambda_min_um']}-{band['lambda_max_um']}um "
                      f"points={n_points} pad={pad}")

    omega_c = 0.5 * device.omega_p
    nu_c = omega_to_thz(omega_c)

    if "spectrum" in outputs:
        photon = mean_photon_number(amp)
        lam_nm = amp.lambda_grid_um * 1e3
        arg = np.unwrap(np.angle(amp.values))
        artifacts["spectrum.csv"] = _csv_text(
            header + ["spectrum: psi(omega) and per-mode photon number"],
            [amp.omega_grid, lam_nm, amp.values.real, amp.values.imag, photon, arg],
            ["omega_rad_per_fs", "lambda_nm", "re_psi", "im_psi",
             "photon_number_per_mode", "unwrapped_phase_rad"])
        summary["bandwidth_50pct_thz"] = bandwidth_thz(amp)
        lo_um, hi_um = band_edges(amp)
        summary["band_edge_lo_nm"] = lo_um * 1e3
        summary["band_edge_hi_nm"] = hi_um * 1e3

    comps = []
    if _compensator_entries(doc):
        if amp is None or phase_curve is None:
            raise ConfigError("compensators need a band section")
        seen = {}
        for cfg in _compensator_entries(doc):
            comp = build_compensator(cfg, device, amp, media, phase_curve)
            label = cfg.get("label", comp.model)
            if label in seen:
                seen[label] += 1
                label = f"{label}_{seen[label]}"
            else:
                seen[label] = 1
            comps.append((label, comp))

    if "spectral_phase" in outputs:
        cols = [phase_curve.omega_grid, amp.lambda_grid_um * 1e3, phase_curve.phase]
        names = ["omega_rad_per_fs", "lambda_nm", "phi_device_rad"]
        gdd_dev = measure_gdd(phase_curve, omega_c)
        summary["gdd_fs2"] = gdd_dev
        for label, comp in comps:
            if comp.model == "perfect":
                continue
            total = phase_curve.phase + comp.phase(phase_curve.omega_grid)
            cols.append(total)
            names.append(f"phi_plus_{label}_rad")
            curve = SpectralPhaseCurve(phase_curve.omega_grid, total, label=label)
            summary[f"gdd_after_{label}_fs2"] = measure_gdd(curve, omega_c)
            if comp.model == "prism_pair":
                summary[f"prism_separation_{label}_mm"] = comp.separation_mm
        artifacts["spectral_phase.csv"] = _csv_text(
            header + ["spectral phase of the pair, and after compensators"], cols, names)

    if "sfg_trace" in outputs:
        for label, comp in comps:
            compensated = apply_compensator(comp, amp)
            if scheme == "collinear":
                trace = sfg_collinear(compensated, device.omega_p, pad=pad)
            else:
                trace = sfg_noncollinear(compensated, pad=pad, nu_c_thz=nu_c)
            width = fwhm(trace)
            summary[f"fwhm_fs_{label}"] = width
            summary[f"cycles_{label}"] = cycles(width, trace.nu_c_thz)
            central = fwhm(trace, mode="central")
            if abs(central - width) > 1e-9 * max(central, width):
                summary[f"fwhm_central_fs_{label}"] = central
            artifacts[f"sfg_{label}.csv"] = _csv_text(
                header + [f"SFG correlation, compensator={label}",
                          f"fwhm_fs={_fmt(width)} cycles={_fmt(cycles(width, trace.nu_c_thz))}"],
                [trace.tau_grid, trace.values], ["tau_fs", "R_normalized"])
        if "fwhm_fs_identity" in summary:
            for label, _ in comps:
                if label != "identity":
                    summary[f"compression_ratio_{label}"] = (
                        summary[f"fwhm_fs_{label}"] / summary["fwhm_fs_identity"])

    if "detected_spectrum" in outputs:
        inst = doc["instrument"]
        win = inst.get("window", {})
        window = AcceptanceWindow(float(win.get("phi_min_deg", 0.11)),
                                  float(win.get("phi_max_deg", 0.39)),
                                  int(win.get("samples", 33)))
        grid = inst.get("lambda_grid_nm", {})
        lam_nm = np.linspace(float(grid.get("min", 615.0)), float(grid.get("max", 1750.0)),
                             int(grid.get("points", 455)))
        s = detected_spectrum(device, window, lam_nm,
                              delta_lambda_nm=float(inst.get("delta_lambda_nm", 5.0)),
                              two_segment=bool(inst.get("two_segment", False)),
                              kappa=kappa)
        cols = [lam_nm, s]
        names = ["lambda_nm", "S_normalized"]
        if "detector" in inst:
            det_name = inst["detector"]
            det = (load_detector_csv(det_name) if os.path.exists(str(det_name))
                   else default_detector(str(det_name)))
            counts = raw_counts_model(s, det, float(inst.get("coupling", 1.0)), lam_nm)
            cols.append(counts)
            names.append(f"counts_model_{det.name}")
        artifacts["detected.csv"] = _csv_text(
            header + ["detected spectrum: angular acceptance x filter resolution"],
            cols, names)

    if "tuning_curve" in outputs:
        tun = doc["tuning"]
        lg = tun["lambda_nm"]
        pg = tun["phi_deg"]
        lam_nm = np.linspace(float(lg["min"]), float(lg["max"]), int(lg["points"]))
        phis = np.linspace(float(pg["min"]), float(pg["max"]), int(pg["points"]))
        mat = tuning_curve(device, lam_nm * NM_TO_UM, phis,
                           value=tun.get("value", "photon_number"))
        lines = [f"# {h}" for h in header]
        lines.append("# tuning curve: rows lambda_nm, columns phi_deg")
        lines.append(",".join(["lambda_nm_vs_phi_deg"] + [_fmt(p) for p in phis]))
        for i in range(lam_nm.size):
            lines.append(",".join([_fmt(lam_nm[i])] + [_fmt(v) for v in mat[i]]))
        artifacts["tuning_curve.csv"] = "\n".join(lines) + "\n"

    if "summary" in outputs or summary:
        lines = [f"# {h}" for h in header]
        for k, v in summary.items():
            lines.append(f"{k} = {_fmt(v)}")
        artifacts["summary.txt"] = "\n".join(lines) + "\n"

    artifacts["plot.gp"] = _gnuplot_script(scenario.name, artifacts)

    os.makedirs(outdir, exist_ok=True)
    for fname in sorted(artifacts):
        with open(os.path.join(outdir, fname), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(artifacts[fname])
    return summary


def _gnuplot_script(name: str, artifacts: dict) -> str:
    lines = [f"# gnuplot script for scenario {name}",
             "set datafile separator ','",
             "set grid"]
    if "spectrum.csv" in artifacts:
        lines += ["set xlabel 'wavelength [nm]'; set ylabel 'photon number per mode'",
                  "plot 'spectrum.csv' using 2:5 with lines title 'spectrum'",
                  "pause -1"]
    for fname in sorted(artifacts):
        if fname.startswith("sfg_"):
            lines += [f"set xlabel 'tau [fs]'; set ylabel 'R (normalized)'",
                      f"plot '{fname}' using 1:2 with lines title '{fname[4:-4]}'",
                      "pause -1"]
    if "detected.csv" in artifacts:
        lines += ["set xlabel 'wavelength [nm]'; set ylabel 'S (normalized)'; set logscale y",
                  "plot 'detected.csv' using 1:2 with lines title 'detected'",
                  "pause -1"]
    if "tuning_curve.csv" in artifacts:
        lines += ["unset logscale; set xlabel 'wavelength [nm]'; set ylabel 'phi [deg]'",
                  "set pm3d map",
                  "splot 'tuning_curve.csv' matrix nonuniform notitle",
                  "pause -1"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- discovery

def _bundled_dir():
    return _pkg_files("chirpedqpm.data") / "scenarios"


def list_scenarios() -> list:
    """All available scenarios, user entries shadowing bundled names."""
    found = {}
    for entry in sorted(_bundled_dir().iterdir()):
        if entry.name.endswith(".yaml"):
            try:
                sc = load_scenario(entry, source="bundled")
                found[sc.name] = sc
            except ConfigError:
                continue
    for d in os.environ.get(SCENARIO_PATH_ENV, "").split(os.pathsep):
        if not d or not os.path.isdir(d):
            continue
        for fn in sorted(os.listdir(d)):
            if fn.endswith(".yaml"):
                try:
                    sc = load_scenario(os.path.join(d, fn), source="user")
                    found[sc.name] = sc
                except ConfigError:
                    continue
    return sorted(found.values(), key=lambda s: s.name)


def find_scenario(ref: str) -> Scenario:
    """Resolve a scenario by file path or by name in the search path."""
    if os.path.exists(ref):
        return load_scenario(ref, source="user")
    for sc in list_scenarios():
        if sc.name == ref:
            return sc
    raise ConfigError(f"scenario {ref!r} not found (not a file, not a known name)")
