"""SFG temporal-correlation traces R(tau) and their width metrics.

R(tau) is proportional to |(1/2pi) integral H G psi e^{i omega tau} d omega|^2,
evaluated by FFT of the (compensated) spectral amplitude on its uniform
grid, zero-padded for sub-fs tau resolution.  The collinear variant zeroes
the integrand below omega_p / 2 (the dichroic split of the collinear
scheme); the noncollinear variant integrates the full band.

Traces are reported relative to their peak position: a linear spectral
phase only translates R, and the transform window is cyclic, so the peak is
rolled to tau = 0.
"""

from dataclasses import dataclass

import numpy as np

from ._metrics import central_crossings, outermost_crossings
from .biphoton import SpectralAmplitude
from .errors import ConfigError, DomainError
from .units import cycles, omega_to_thz

__all__ = ["CorrelationTrace", "sfg_noncollinear", "sfg_collinear", "fwhm", "cycles"]

DEFAULT_PAD = 8


@dataclass(frozen=True)
class CorrelationTrace:
    """Sampled real correlation R(tau) >= 0 on a uniform tau grid [fs]."""

    tau_grid: np.ndarray
    values: np.ndarray
    nu_c_thz: float                 # degenerate-pair center frequency
    normalized: bool = True

    def __post_init__(self):
        t = np.asarray(self.tau_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ConfigError("tau_grid and values must be matching 1-d arrays")
        if np.any(v < 0):
            raise ConfigError("correlation values must be nonnegative")
        if self.normalized and abs(v.max() - 1.0) > 1e-12:
            raise ConfigError("normalized trace must peak at 1")
        object.__setattr__(self, "tau_grid", t)
        object.__setattr__(self, "values", v)

    @property
    def delta_tau(self):
        return float(self.tau_grid[1] - self.tau_grid[0])


def _transform(amp: SpectralAmplitude, integrand: np.ndarray, pad: int,
               verify: bool, normalize: bool, nu_c_thz: float) -> CorrelationTrace:
    n = integrand.size
    n_pad = n * pad
    dw = amp.delta_omega
    # e^{+i omega tau} kernel: ifft * N gives sum_j g_j e^{+2pi i jk/N}
    spect = np.fft.ifft(integrand, n_pad) * n_pad
    r = spect.real ** 2 + spect.imag ** 2
    if verify:
        # FFT path against direct quadrature at 16 pseudo-random tau points
        rng = np.random.default_rng(n_pad)
        idx = rng.integers(0, n_pad, 16)
        j = np.arange(n)
        for k in idx:
            direct = np.sum(integrand * np.exp(2j * np.pi * j * k / n_pad))
            ref = abs(direct) ** 2
            if abs(r[k] - ref) > 1e-8 * max(ref, r.max() * 1e-8):
                raise DomainError("FFT/quadrature cross-check failed")
    d_tau = 2.0 * np.pi / (n_pad * dw)
    tau = (np.arange(n_pad) - n_pad // 2) * d_tau
    r = np.roll(r, n_pad // 2 - int(np.argmax(r)))
    peak = r.max()
    if normalize and peak > 0:
        r = r / peak
    return CorrelationTrace(tau, r, nu_c_thz=float(nu_c_thz), normalized=normalize)


def _weighted_center_thz(amp: SpectralAmplitude) -> float:
    p = amp.values.real ** 2 + amp.values.imag ** 2
    return float(omega_to_thz(np.sum(p * amp.omega_grid) / np.sum(p)))


def sfg_noncollinear(amp: SpectralAmplitude, pad: int = DEFAULT_PAD,
                     verify: bool = True, normalize: bool = True,
                     nu_c_thz: float = None) -> CorrelationTrace:
    """Noncollinear SFG correlation from a (compensated) spectral amplitude.

    nu_c defaults to the intensity-weighted center frequency, which for a
    symmetric pair spectrum is the degenerate frequency omega_p / 4 pi.
    """
    if np.any(amp.flagged):
        raise DomainError("amplitude has flagged cells; rescan inside the valid band")
    if nu_c_thz is None:
        nu_c_thz = _weighted_center_thz(amp)
    return _transform(amp, amp.values, pad, verify, normalize, nu_c_thz)


def sfg_collinear(amp: SpectralAmplitude, omega_p: float, pad: int = DEFAULT_PAD,
                  verify: bool = True, normalize: bool = True) -> CorrelationTrace:
    """Collinear SFG correlation: the integrand is zeroed below omega_p / 2.

    nu_c is the degenerate center omega_p / 4 pi, as in the noncollinear case.
    """
    if np.any(amp.flagged):
        raise DomainError("amplitude has flagged cells; rescan inside the valid band")
    if amp.omega_grid[-1] < 0.5 * omega_p:
        raise DomainError("grid does not reach omega_p / 2")
    integrand = np.where(amp.omega_grid >= 0.5 * omega_p, amp.values, 0.0)
    return _transform(amp, integrand, pad, verify, normalize,
                      float(omega_to_thz(0.5 * omega_p)))


def fwhm(trace: CorrelationTrace, mode: str = "outermost") -> float:
    """Full width at half maximum of the trace, in fs.

    mode="outermost" (default) measures between the outermost half-maximum
    crossings around the global peak; mode="central" measures only the
    contiguous lobe containing the peak (relevant for side-lobed traces).
    """
    v = trace.values
    level = 0.5 * v.max()
    ipk = int(np.argmax(v))
    if ipk == 0 or ipk == v.size - 1:
        raise DomainError("trace peak at grid boundary")
    if mode == "outermost":
        lo, hi = outermost_crossings(trace.tau_grid, v, level)
    elif mode == "central":
        lo, hi = central_crossings(trace.tau_grid, v, level)
    else:
        raise ConfigError(f"unknown fwhm mode {mode!r}")
    return float(hi - lo)
