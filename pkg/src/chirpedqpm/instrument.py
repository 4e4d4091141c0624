"""Forward model of the detection chain.

The detected spectrum integrates the per-mode photon number over the
angular acceptance window and weights it by the effective angular-frequency
resolution of the bandpass filter, delta_omega = 2 pi c0 delta_lambda /
lambda^2 (a fixed wavelength resolution grows the frequency bin toward
shorter wavelengths).  Output is shape-only: peak-normalized, since the
absolute rate depends on unmeasured coupling factors.
"""

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .biphoton import spectral_amplitude_array
from .device import Geometry, QpmDevice
from .errors import ConfigError, DomainError
from .units import C0, NM_TO_UM, lambda_to_omega

__all__ = [
    "AcceptanceWindow",
    "DetectorModel",
    "load_detector_csv",
    "default_detector",
    "detected_spectrum",
    "detector_efficiency",
    "raw_counts_model",
]


@dataclass(frozen=True)
class AcceptanceWindow:
    """Angular acceptance [degrees] and the quadrature sample count."""

    phi_min_deg: float
    phi_max_deg: float
    n_angle_samples: int = 33

    def __post_init__(self):
        if not self.phi_min_deg < self.phi_max_deg:
            raise ConfigError("need phi_min < phi_max")
        if self.n_angle_samples < 3:
            raise ConfigError("need at least 3 angular samples")


@dataclass(frozen=True)
class DetectorModel:
    """Tabulated quantum efficiency vs wavelength [nm]."""

    name: str
    efficiency_points: tuple        # ((lambda_nm, efficiency), ...)
    interpolation: str = "log_linear"

    def __post_init__(self):
        pts = tuple((float(l), float(e)) for l, e in self.efficiency_points)
        if len(pts) < 2:
            raise ConfigError("detector table needs at least two points")
        lams = [l for l, _ in pts]
        if any(b <= a for a, b in zip(lams, lams[1:])):
            raise ConfigError("detector wavelengths must be increasing")
        if any(not (0.0 < e <= 1.0) for _, e in pts):
            raise ConfigError("efficiencies must lie in (0, 1]")
        if self.interpolation not in ("log_linear", "linear"):
            raise ConfigError(f"unknown interpolation {self.interpolation!r}")
        object.__setattr__(self, "efficiency_points", pts)


def load_detector_csv(path, name=None, interpolation="log_linear") -> DetectorModel:
    """Read a detector model from CSV rows of (lambda_nm, efficiency)."""
    pts = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            pts.append((float(row[0]), float(row[1])))
    return DetectorModel(name=name or str(path), efficiency_points=tuple(pts),
                         interpolation=interpolation)


def default_detector(name: str) -> DetectorModel:
    """A packaged detector table: 'snspd' or 'pmt'."""
    from importlib.resources import files, as_file

    with as_file(files("chirpedqpm.data") / f"{name}_efficiency.csv") as p:
        return load_detector_csv(p, name=name)


def detector_efficiency(det: DetectorModel, lambda_nm):
    """Interpolated quantum efficiency at lambda_nm (no extrapolation)."""
    lam = np.asarray(lambda_nm, dtype=float)
    xs = np.array([l for l, _ in det.efficiency_points])
    ys = np.array([e for _, e in det.efficiency_points])
    if np.any(lam < xs[0]) or np.any(lam > xs[-1]):
        raise DomainError(
            f"wavelength outside detector table hull [{xs[0]:g}, {xs[-1]:g}] nm")
    if det.interpolation == "log_linear":
        out = np.exp(np.interp(lam, xs, np.log(ys)))
    else:
        out = np.interp(lam, xs, ys)
    # tabulated knots reproduce exactly (no exp/log round-trip residue)
    knot = np.isin(lam, xs)
    if np.any(knot):
        out = np.where(knot, np.interp(lam, xs, ys), out) if out.ndim else ys[xs == lam][0]
    return float(out) if np.isscalar(lambda_nm) else out


def _simpson_weights(n: int) -> np.ndarray:
    if n % 2 == 0:
        n += 1   # composite Simpson needs an odd sample count
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / 3.0


def detected_spectrum(device: QpmDevice, window: AcceptanceWindow, lambda_grid_nm,
                      delta_lambda_nm: float = 5.0, two_segment: bool = False,
                      kappa: float = 1.0):
    """Peak-normalized detected spectrum over lambda_grid_nm.

    S(lambda) ~ delta_omega(lambda) * integral_{phi window} |psi|^2 dphi.
    two_segment=True switches the filter resolution to 4 nm below 1.1 um
    and 6 nm above, matching the physical bandpass instead of the flat
    5 nm theory default.  Wavelengths whose signal or idler leaves the
    valid domain are flagged NaN and reported in one warning.
    """
    lam_nm = np.asarray(lambda_grid_nm, dtype=float)
    lam_um = lam_nm * NM_TO_UM
    omega = lambda_to_omega(lam_um)
    n = window.n_angle_samples + (1 - window.n_angle_samples % 2)
    phis = np.linspace(window.phi_min_deg, window.phi_max_deg, n)
    wts = _simpson_weights(n)
    h = np.radians(phis[1] - phis[0])
    acc = np.zeros(lam_nm.shape)
    bad = np.zeros(lam_nm.shape, dtype=bool)
    for phi, wt in zip(phis, wts):
        psi = spectral_amplitude_array(device, omega, Geometry(abs(float(phi))),
                                       kappa=kappa, masked=True)
        p = (psi.real ** 2 + psi.imag ** 2) / (2 * np.pi)
        bad |= np.isnan(p)
        acc += wt * np.where(np.isnan(p), 0.0, p)
    acc *= h
    if two_segment:
        dlam = np.where(lam_um < 1.1, 4.0, 6.0) * NM_TO_UM
    else:
        dlam = delta_lambda_nm * NM_TO_UM
    s = acc * (2 * np.pi * C0 * dlam / lam_um ** 2)
    s[bad] = np.nan
    n_bad = int(bad.sum())
    if n_bad:
        warnings.warn(f"detected_spectrum: {n_bad} wavelength cells flagged "
                      "outside the valid domain and excluded", stacklevel=2)
    peak = np.nanmax(s)
    if not (peak > 0):
        raise DomainError("detected spectrum vanished over the whole grid")
    return s / peak


def raw_counts_model(spectrum, det: DetectorModel, coupling: float, lambda_grid_nm):
    """Elementwise spectrum x detector efficiency x coupling."""
    s = np.asarray(spectrum, dtype=float)
    lam = np.asarray(lambda_grid_nm, dtype=float)
    if s.shape != lam.shape:
        raise ConfigError("spectrum and wavelength grid shapes differ")
    if not (0 < coupling <= 1):
        raise ConfigError("coupling must lie in (0, 1]")
    return s * detector_efficiency(det, lam) * coupling
