"""Spectral-phase transfer functions H(omega) and GDD measurement.

Every compensator is a loss-free pure phase filter, |H| = 1: identity,
perfect conjugation of a reference amplitude, quadratic (pure GDD around a
center frequency), and a two-prism compressor evaluated by exact refraction
through the Brewster-cut pair geometry.

The delay element G of the correlation measurement is unity here: the scan
delay tau is carried by the e^{i omega tau} Fourier kernel, and any fixed
extra linear phase would only translate the correlation trace.
"""

from dataclasses import dataclass

import numpy as np

from .biphoton import SpectralAmplitude, SpectralPhaseCurve
from .errors import ConfigError, DomainError
from .media import Medium, refractive_index
from .units import C0, MM_TO_UM, omega_to_lambda

__all__ = [
    "DelayElement",
    "IdentityCompensator",
    "PerfectCompensator",
    "QuadraticCompensator",
    "PrismPairCompensator",
    "apply_compensator",
    "prism_pair_phase",
    "measure_gdd",
]


@dataclass(frozen=True)
class DelayElement:
    """Relative arm delay tau [fs]; transfer e^{i omega tau}."""

    tau_fs: float = 0.0

    def transfer(self, omega):
        return np.exp(1j * np.asarray(omega, dtype=float) * self.tau_fs)


@dataclass(frozen=True)
class IdentityCompensator:
    model = "identity"

    def phase(self, omega):
        return np.zeros_like(np.asarray(omega, dtype=float))

    def transfer(self, omega):
        return np.ones_like(np.asarray(omega, dtype=float), dtype=complex)


@dataclass(frozen=True)
class PerfectCompensator:
    """H = exp(-i arg psi_ref): makes the reference amplitude real and nonnegative."""

    model = "perfect"
    reference: SpectralAmplitude = None

    def __post_init__(self):
        if self.reference is None:
            raise ConfigError("perfect compensator needs a reference amplitude")

    def phase(self, omega):
        omega = np.asarray(omega, dtype=float)
        ref = self.reference
        if omega.shape != ref.omega_grid.shape or not np.allclose(
                omega, ref.omega_grid, rtol=0, atol=1e-12 * ref.delta_omega):
            raise ConfigError("perfect compensator reference grid mismatch")
        return -np.angle(ref.values)

    def transfer(self, omega):
        return np.exp(1j * self.phase(omega))


@dataclass(frozen=True)
class QuadraticCompensator:
    """Pure group-delay dispersion: phase = (gdd/2) (omega - omega_c)^2."""

    model = "quadratic"
    gdd_fs2: float = 0.0
    omega_c: float = 0.0        # rad/fs

    def phase(self, omega):
        d = np.asarray(omega, dtype=float) - self.omega_c
        return 0.5 * self.gdd_fs2 * d * d

    def transfer(self, omega):
        return np.exp(1j * self.phase(omega))


@dataclass(frozen=True)
class PrismPairCompensator:
    """Two-prism compressor: phase (omega/c0) * P(omega), P = l cos(beta).

    beta(omega) is the angular deviation of the ray leaving prism 1 from the
    design ray joining the two apexes, from exact refraction through the
    prism.  With incidence="brewster" the apex is cut for symmetric
    (minimum-deviation) passage at Brewster incidence for the design
    wavelength; with incidence="min_deviation" an explicit apex angle is
    used and the design ray passes symmetrically.  Glass insertion beyond
    the apex line is taken as zero; passes counts traversals of the pair
    (2 = standard double-passed compressor).
    """

    model = "prism_pair"
    glass: Medium = None
    separation_mm: float = 500.0
    design_wavelength_um: float = 1.064
    incidence: str = "brewster"
    apex_angle_rad: float = None
    passes: int = 2
    temperature_K: float = 293.0

    def __post_init__(self):
        if self.glass is None:
            raise ConfigError("prism compensator needs a glass medium")
        if self.separation_mm <= 0:
            raise ConfigError("prism separation must be positive")
        if self.incidence not in ("brewster", "min_deviation"):
            raise ConfigError(f"unknown incidence convention {self.incidence!r}")
        n0 = refractive_index(self.glass, self.design_wavelength_um, self.temperature_K)
        if self.incidence == "brewster":
            theta1 = np.arctan(n0)
            apex = 2.0 * np.arcsin(np.sin(theta1) / n0)
        else:
            if self.apex_angle_rad is None:
                raise ConfigError("min_deviation incidence needs apex_angle_rad")
            apex = float(self.apex_angle_rad)
            s = n0 * np.sin(apex / 2.0)
            if s >= 1.0:
                raise DomainError("design ray cannot exit: apex angle too large")
            theta1 = np.arcsin(s)
        object.__setattr__(self, "_theta1", float(theta1))
        object.__setattr__(self, "_apex", float(apex))

    def phase(self, omega):
        return prism_pair_phase(self, omega)

    def transfer(self, omega):
        return np.exp(1j * self.phase(omega))


def prism_pair_phase(comp: PrismPairCompensator, omega):
    """Spectral phase of the prism pair at omega [rad/fs] (exact ray trace)."""
    w = np.asarray(omega, dtype=float)
    lam = omega_to_lambda(w)
    n = refractive_index(comp.glass, lam, comp.temperature_K)
    sin_r1 = np.sin(comp._theta1) / n
    if np.any(sin_r1 >= 1.0):
        raise DomainError("refraction unsolvable at prism entrance")
    r2 = comp._apex - np.arcsin(sin_r1)
    s2 = n * np.sin(r2)
    if np.any(np.abs(s2) >= 1.0):
        raise DomainError("total internal reflection at prism exit face")
    theta2 = np.arcsin(s2)
    n0 = refractive_index(comp.glass, comp.design_wavelength_um, comp.temperature_K)
    theta2_0 = np.arcsin(n0 * np.sin(comp._apex - np.arcsin(np.sin(comp._theta1) / n0)))
    beta = theta2 - theta2_0
    path = comp.separation_mm * MM_TO_UM * np.cos(beta)
    out = comp.passes * (w / C0) * path
    return float(out) if np.isscalar(omega) else out


def apply_compensator(comp, amp: SpectralAmplitude) -> SpectralAmplitude:
    """Pointwise product H(omega) psi(omega); modulus preserved exactly."""
    h = comp.transfer(amp.omega_grid)
    mod = np.abs(h)
    ok = np.isfinite(mod)
    if np.any(np.abs(mod[ok] - 1.0) > 1e-12):
        raise ConfigError(f"compensator {comp.model!r} is not unit-modulus")
    return SpectralAmplitude(amp.omega_grid, amp.values * h, geometry=amp.geometry,
                             device_tag=amp.device_tag, kappa=amp.kappa)


def measure_gdd(curve: SpectralPhaseCurve, omega_c: float) -> float:
    """Group-delay dispersion d^2 phi / d omega^2 at omega_c, in fs^2.

    Five-point central finite difference on the sampled curve; omega_c is
    snapped to the nearest grid point and needs two neighbours on each side.
    """
    w = curve.omega_grid
    if not (w[0] <= omega_c <= w[-1]):
        raise DomainError("omega_c outside the phase curve grid")
    i = int(np.argmin(np.abs(w - omega_c)))
    if i < 2 or i > w.size - 3:
        raise DomainError("omega_c too close to the grid edge for the 5-point stencil")
    h = float(w[1] - w[0])
    f = curve.phase
    return float((-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] - f[i + 2])
                 / (12.0 * h * h))
