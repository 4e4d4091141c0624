"""Two-photon spectral amplitude of a chirped-QPM device.

psi(omega, L; phi) is assembled from the z = 0 phase mismatch and the pair
wavevector sum:

    psi = -sqrt(i kappa^2 pi / 2 eta)
          * exp(i [k(w) + k(wp - w)] L) * exp(-i Dk^2 / 2 eta)
          * [ f(u Dk) - f(u (Dk + eta L)) ],    u = (1+i)/(2 sqrt(eta))

with Dk = Delta k(omega, 0; phi) and f the imaginary error function.  The
bracket is the closed form of the Fresnel integral over the crystal, so an
independent z-quadrature oracle exists for it (used in the tests).  The
average photon number per mode is |psi|^2 / 2 pi.

The unchirped limit eta = 0 divides by eta and is rejected; the sinc-type
uniform-grating amplitude is out of scope here.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._metrics import outermost_crossings
from .device import COLLINEAR, Geometry, QpmDevice, _mismatch_base_masked, \
    _pair_wavevector_sum_masked, grating_wavevector, pair_wavevector_sum, phase_mismatch
from .errors import ConfigError, DomainError
from .units import lambda_to_omega, omega_to_lambda

__all__ = [
    "SpectralAmplitude",
    "SpectralPhaseCurve",
    "erfi_complex",
    "faddeeva_w",
    "spectral_amplitude",
    "spectral_amplitude_array",
    "mean_photon_number",
    "spectral_phase",
    "sample_spectral_phase",
    "unwrap_phase",
    "spectrum_scan",
    "band_edges",
    "bandwidth_thz",
]


def erfi_complex(zz):
    """Imaginary error function f(zz) for complex argument (active kernel lane)."""
    return kernels.erfi(zz)


def faddeeva_w(zz):
    """Scaled complementary error function w(zz); the overflow-safe companion."""
    return kernels.faddeeva_w(zz)


@dataclass(frozen=True)
class SpectralAmplitude:
    """Sampled complex psi on a uniform angular-frequency grid."""

    omega_grid: np.ndarray          # rad/fs, strictly increasing, uniform
    values: np.ndarray              # complex psi; NaN marks flagged cells
    geometry: Geometry = COLLINEAR
    device_tag: str = ""
    kappa: float = 1.0

    def __post_init__(self):
        w = np.asarray(self.omega_grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if w.ndim != 1 or w.size < 2 or v.shape != w.shape:
            raise ConfigError("omega_grid and values must be matching 1-d arrays (>= 2 points)")
        dw = np.diff(w)
        if np.any(dw <= 0) or (dw.max() - dw.min()) > 1e-9 * dw.mean():
            raise ConfigError("omega_grid must be strictly increasing and uniform")
        finite = np.isfinite(v.real) & np.isfinite(v.imag)
        flagged = np.isnan(v.real) | np.isnan(v.imag)
        if np.any(~finite & ~flagged):
            raise ConfigError("non-finite amplitude outside flagged (NaN) cells")
        object.__setattr__(self, "omega_grid", w)
        object.__setattr__(self, "values", v)

    @property
    def delta_omega(self):
        return float(self.omega_grid[1] - self.omega_grid[0])

    @property
    def flagged(self):
        """Boolean mask of cells where a domain error was flagged."""
        return np.isnan(self.values.real) | np.isnan(self.values.imag)

    @property
    def lambda_grid_um(self):
        return omega_to_lambda(self.omega_grid)


@dataclass(frozen=True)
class SpectralPhaseCurve:
    """Unwrapped spectral phase samples phi(omega)."""

    omega_grid: np.ndarray          # rad/fs, increasing
    phase: np.ndarray               # rad, unwrapped
    label: str = ""

    def __post_init__(self):
        w = np.asarray(self.omega_grid, dtype=float)
        p = np.asarray(self.phase, dtype=float)
        if w.shape != p.shape or w.ndim != 1 or w.size < 5:
            raise ConfigError("phase curve needs matching 1-d arrays (>= 5 points)")
        if np.any(np.diff(w) <= 0):
            raise ConfigError("omega_grid must be strictly increasing")
        object.__setattr__(self, "omega_grid", w)
        object.__setattr__(self, "phase", p)


def _require_chirp(device: QpmDevice):
    if device.eta == 0:
        raise DomainError(
            "eta = 0: the chirped-device amplitude divides by the chirp rate; "
            "the unchirped sinc limit is not modelled"
        )


def spectral_amplitude(device: QpmDevice, omega: float, geom: Geometry = COLLINEAR,
                       kappa: float = 1.0) -> complex:
    """psi(omega, L; phi) at a single frequency (strict domain checks)."""
    _require_chirp(device)
    dk0 = phase_mismatch(device, float(omega), 0.0, geom)
    ksum = float(pair_wavevector_sum(device, float(omega)))
    return complex(kernels.spectral_amplitude_kernel(
        dk0, ksum, device.eta, device.length_um, kappa))


def spectral_amplitude_array(device: QpmDevice, omega, geom: Geometry = COLLINEAR,
                             kappa: float = 1.0, masked: bool = False) -> np.ndarray:
    """Vectorized psi over an omega array.

    With masked=True, per-point domain violations become NaN flags instead
    of exceptions (wide scans legitimately cross domain edges).
    """
    _require_chirp(device)
    w = np.asarray(omega, dtype=float)
    if masked:
        dk0 = _mismatch_base_masked(device, w, geom) - grating_wavevector(device, 0.0)
        ksum = _pair_wavevector_sum_masked(device, w)
        valid = np.isfinite(dk0) & np.isfinite(ksum)
        out = np.full(w.shape, np.nan * (1 + 1j), dtype=complex)
        if np.any(valid):
            out[valid] = kernels.spectral_amplitude_kernel(
                dk0[valid], ksum[valid], device.eta, device.length_um, kappa)
        return out
    dk0 = phase_mismatch(device, w, 0.0, geom)
    ksum = pair_wavevector_sum(device, w)
    return kernels.spectral_amplitude_kernel(dk0, ksum, device.eta, device.length_um, kappa)


def mean_photon_number(amp: SpectralAmplitude) -> np.ndarray:
    """Per-mode photon number |psi|^2 / 2 pi, elementwise (NaN at flagged cells)."""
    v = amp.values
    return (v.real ** 2 + v.imag ** 2) / (2.0 * np.pi)


def spectral_phase(device: QpmDevice, omega, geom: Geometry = COLLINEAR):
    """Intrinsic biphoton spectral phase.

    phi_spec(omega) = [k(omega) + k(omega_p - omega)] L - Delta k(omega,0)^2 / 2 eta,
    evaluated analytically (no wrapping), at the device working geometry.
    """
    _require_chirp(device)
    dk0 = phase_mismatch(device, omega, 0.0, geom)
    ksum = pair_wavevector_sum(device, omega)
    out = ksum * device.length_um - dk0 * dk0 / (2.0 * device.eta)
    return float(out) if np.isscalar(omega) else out


def sample_spectral_phase(device: QpmDevice, lambda_min_um: float, lambda_max_um: float,
                          n_points: int, geom: Geometry = COLLINEAR) -> SpectralPhaseCurve:
    """phi_spec sampled on a uniform omega grid spanning [lambda_min, lambda_max]."""
    if n_points < 5:
        raise ConfigError("need at least 5 points")
    w = np.linspace(lambda_to_omega(lambda_max_um), lambda_to_omega(lambda_min_um), n_points)
    return SpectralPhaseCurve(w, spectral_phase(device, w, geom), label="phi_spec")


def unwrap_phase(omega_grid, values, label: str = "") -> SpectralPhaseCurve:
    """Unwrap arg(values) into a SpectralPhaseCurve.

    Valid only when the true phase changes by less than pi per grid step;
    strongly delayed amplitudes need correspondingly fine grids.
    """
    return SpectralPhaseCurve(np.asarray(omega_grid, dtype=float),
                              np.unwrap(np.angle(np.asarray(values))), label=label)


def spectrum_scan(device: QpmDevice, lambda_min_um: float, lambda_max_um: float,
                  n_points: int, geom: Geometry = COLLINEAR,
                  kappa: float = 1.0) -> SpectralAmplitude:
    """psi sampled on a uniform omega grid whose endpoints map to the lambda band."""
    if n_points < 2:
        raise ConfigError("n_points must be >= 2")
    if not (0 < lambda_min_um < lambda_max_um):
        raise ConfigError("need 0 < lambda_min < lambda_max")
    w = np.linspace(lambda_to_omega(lambda_max_um), lambda_to_omega(lambda_min_um), n_points)
    values = spectral_amplitude_array(device, w, geom, kappa=kappa, masked=True)
    return SpectralAmplitude(w, values, geometry=geom,
                             device_tag=f"L={device.length_um:g}um eta={device.eta:g}",
                             kappa=kappa)


def band_edges(amp: SpectralAmplitude, threshold: float = 0.01):
    """Outermost crossings of ``threshold`` x peak photon number.

    Returns (lambda_lo_um, lambda_hi_um).  Flagged cells are excluded from
    the peak search and treated as below threshold.
    """
    p = mean_photon_number(amp)
    p = np.where(np.isnan(p), 0.0, p)
    w_lo, w_hi = outermost_crossings(amp.omega_grid, p, threshold * p.max())
    return float(omega_to_lambda(w_hi)), float(omega_to_lambda(w_lo))


def bandwidth_thz(amp: SpectralAmplitude, threshold: float = 0.5) -> float:
    """Width in THz between the outermost ``threshold``-of-peak crossings."""
    p = mean_photon_number(amp)
    p = np.where(np.isnan(p), 0.0, p)
    w_lo, w_hi = outermost_crossings(amp.omega_grid, p, threshold * p.max())
    return (w_hi - w_lo) / (2.0 * np.pi) * 1e3
