"""Chirped-QPM device description and phase matching.

The poling grating has wavevector K(z) = 2 pi / Lambda_0 - eta z along the
pump direction (z = 0 at the input face), so the local poling period grows
toward the output face for eta > 0.  The noncollinear phase mismatch is
evaluated for signal/idler emitted at an external angle phi on either side
of the pump, with the in-crystal angle obtained from sin(phi)/n_e at the
respective frequency.

Strict operations raise DomainError on invalid input; the ``*_masked``
variants flag invalid grid points as NaN instead, which is what wide scans
(tuning curves, detected spectra) use so a grid crossing a domain edge
does not abort.

Devices and geometries are frozen dataclasses and every operation here is a
pure function of its arguments, so instances can be shared across threads
and grid cells evaluated in any order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .media import Medium, refractive_index, wavevector
from .units import C0, lambda_to_omega

__all__ = [
    "Geometry",
    "QpmDevice",
    "grating_wavevector",
    "design_chirp",
    "phase_mismatch",
    "phase_mismatch_masked",
    "pair_wavevector_sum",
    "tuning_curve",
]


@dataclass(frozen=True)
class Geometry:
    """Emission geometry: external angle into air, degrees; 0 = collinear."""

    phi_deg: float = 0.0

    def __post_init__(self):
        if not abs(self.phi_deg) < 90.0:
            raise ConfigError(f"|phi| must be < 90 deg, got {self.phi_deg}")

    @property
    def phi_rad(self):
        return np.radians(self.phi_deg)


COLLINEAR = Geometry(0.0)


@dataclass(frozen=True)
class QpmDevice:
    """Chirped-QPM crystal: medium, length, input-face period, chirp rate, pump."""

    medium: Medium
    length_um: float
    lambda0_um: float
    eta: float                  # chirp rate, rad/um^2
    pump_wavelength_um: float
    temperature_K: float = 293.0

    def __post_init__(self):
        if self.length_um <= 0:
            raise ConfigError("device length must be positive")
        if self.lambda0_um <= 0:
            raise ConfigError("poling period must be positive")
        k_end = 2 * np.pi / self.lambda0_um - self.eta * self.length_um
        if k_end <= 0:
            raise ConfigError("grating wavevector K(z) must stay positive over [0, L]")
        lo, hi = self.medium.valid_range
        if not (lo <= self.pump_wavelength_um <= hi):
            raise ConfigError(
                f"pump wavelength {self.pump_wavelength_um} um outside medium valid range"
            )

    @property
    def omega_p(self):
        """Pump angular frequency, rad/fs."""
        return 2 * np.pi * C0 / self.pump_wavelength_um

    @property
    def k0(self):
        """Grating wavevector at the input face, rad/um."""
        return 2 * np.pi / self.lambda0_um


def grating_wavevector(device: QpmDevice, z_um):
    """K(z) = 2 pi / Lambda_0 - eta z  [rad/um] for z in [0, L]."""
    z = np.asarray(z_um, dtype=float)
    if np.any(z < 0) or np.any(z > device.length_um):
        raise DomainError(f"z outside [0, {device.length_um}] um")
    out = device.k0 - device.eta * z
    return float(out) if np.isscalar(z_um) else out


def design_chirp(lambda_start_um: float, lambda_end_um: float, length_um: float) -> float:
    """Chirp rate eta [rad/um^2] taking the period from lambda_start to lambda_end over L."""
    if min(lambda_start_um, lambda_end_um, length_um) <= 0:
        raise ConfigError("periods and length must be positive")
    return (2 * np.pi / lambda_start_um - 2 * np.pi / lambda_end_um) / length_um


def _n_masked(medium: Medium, lam, T):
    """n_e with NaN outside the valid range (vectorized, no exceptions)."""
    lo, hi = medium.valid_range
    lam = np.asarray(lam, dtype=float)
    ok = (lam >= lo) & (lam <= hi)
    n = np.full(lam.shape, np.nan)
    if np.any(ok):
        n[ok] = refractive_index(medium, lam[ok], T)
    return n


def _mismatch_base_masked(device: QpmDevice, omega, geom: Geometry):
    """k_p - signal - idler longitudinal terms (no -K); NaN at invalid points."""
    w = np.asarray(omega, dtype=float)
    wp = device.omega_p
    T = device.temperature_K
    out = np.full(w.shape, np.nan)
    inside = (w > 0) & (w < wp)
    if not np.any(inside):
        return out
    ws = w[inside]
    wi = wp - ws
    n_s = _n_masked(device.medium, 2 * np.pi * C0 / ws, T)
    n_i = _n_masked(device.medium, 2 * np.pi * C0 / wi, T)
    k_p = wavevector(device.medium, wp, T)
    sin_phi = np.sin(geom.phi_rad)
    with np.errstate(invalid="ignore"):
        arg_s = 1.0 - (sin_phi / n_s) ** 2
        arg_i = 1.0 - (ws / wi) ** 2 * (sin_phi / n_i) ** 2
        arg_s[arg_s < 0] = np.nan
        arg_i[arg_i < 0] = np.nan
        out[inside] = (k_p - (n_s * ws / C0) * np.sqrt(arg_s)
                       - (n_i * wi / C0) * np.sqrt(arg_i))
    return out


def _mismatch_base(device: QpmDevice, omega, geom: Geometry):
    """Strict variant: raises DomainError naming the offending branch."""
    w = np.asarray(omega, dtype=float)
    wp = device.omega_p
    if np.any(w <= 0) or np.any(w >= wp):
        raise DomainError("omega must lie strictly inside (0, omega_p)")
    wi = wp - w
    T = device.temperature_K
    n_s = refractive_index(device.medium, 2 * np.pi * C0 / w, T)
    n_i = refractive_index(device.medium, 2 * np.pi * C0 / wi, T)
    k_p = wavevector(device.medium, wp, T)
    sin_phi = np.sin(geom.phi_rad)
    arg_s = 1.0 - (sin_phi / n_s) ** 2
    arg_i = 1.0 - (w / wi) ** 2 * (sin_phi / n_i) ** 2
    if np.any(arg_s < 0):
        raise DomainError("signal square-root argument negative: emission angle too large")
    if np.any(arg_i < 0):
        raise DomainError("idler square-root argument negative: emission angle too large")
    return k_p - (n_s * w / C0) * np.sqrt(arg_s) - (n_i * wi / C0) * np.sqrt(arg_i)


def phase_mismatch(device: QpmDevice, omega, z_um, geom: Geometry = COLLINEAR):
    """Delta k(omega, z; phi) [rad/um]; zero defines local phase matching."""
    base = _mismatch_base(device, omega, geom) - grating_wavevector(device, z_um)
    return float(base) if np.isscalar(omega) and np.isscalar(z_um) else base


def phase_mismatch_masked(device: QpmDevice, omega, z_um, geom: Geometry = COLLINEAR):
    """Delta k over a grid with NaN flags instead of exceptions."""
    return _mismatch_base_masked(device, omega, geom) - grating_wavevector(device, z_um)


def pair_wavevector_sum(device: QpmDevice, omega):
    """k(omega) + k(omega_p - omega) [rad/um], the pair propagation term."""
    w = np.asarray(omega, dtype=float)
    wp = device.omega_p
    T = device.temperature_K
    return wavevector(device.medium, w, T) + wavevector(device.medium, wp - w, T)


def _pair_wavevector_sum_masked(device: QpmDevice, omega):
    w = np.asarray(omega, dtype=float)
    wp = device.omega_p
    T = device.temperature_K
    lam_s = np.full(w.shape, np.nan)
    ok = (w > 0) & (w < wp)
    lam_s[ok] = 2 * np.pi * C0 / w[ok]
    n_s = _n_masked(device.medium, lam_s, T)
    lam_i = np.full(w.shape, np.nan)
    lam_i[ok] = 2 * np.pi * C0 / (wp - w[ok])
    n_i = _n_masked(device.medium, lam_i, T)
    return n_s * w / C0 + n_i * (wp - w) / C0


def tuning_curve(device: QpmDevice, lambda_grid_um, phi_grid_deg, value: str = "photon_number"):
    """Angle-resolved emission matrix over (lambda, phi) grids.

    Element (i, j) is the per-mode photon number |psi(omega_i, L; phi_j)|^2 / 2 pi
    (or the raw mismatch Delta k(omega_i, 0; phi_j) with value="delta_k" for
    debugging).  Cells whose signal or idler wavelength leaves the medium's
    valid range, or whose angle is geometrically unreachable, are flagged
    as NaN instead of aborting the scan.  The matrix is even in phi.
    """
    from .biphoton import spectral_amplitude_array   # biphoton depends on device

    if value not in ("photon_number", "delta_k"):
        raise ConfigError(f"unknown tuning-curve value {value!r}")
    lam = np.atleast_1d(np.asarray(lambda_grid_um, dtype=float))
    phis = np.atleast_1d(np.asarray(phi_grid_deg, dtype=float))
    if lam.size == 0 or phis.size == 0:
        raise ConfigError("tuning-curve grids must be nonempty")
    omega = lambda_to_omega(lam)
    out = np.empty((lam.size, phis.size))
    for j, phi in enumerate(phis):
        geom = Geometry(abs(float(phi)))   # Delta k depends on phi only through sin^2
        if value == "photon_number":
            psi = spectral_amplitude_array(device, omega, geom, masked=True)
            out[:, j] = (psi.real ** 2 + psi.imag ** 2) / (2 * np.pi)
        else:
            out[:, j] = phase_mismatch_masked(device, omega, 0.0, geom)
    return out
