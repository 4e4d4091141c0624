import numpy as np
import pytest

from chirpedqpm import (CorrelationTrace, DomainError, IdentityCompensator,
                        PerfectCompensator, QuadraticCompensator, SpectralAmplitude,
                        apply_compensator, cycles, fwhm, sfg_collinear, sfg_noncollinear)
from chirpedqpm.units import lambda_to_omega


def make_amp(values, w_lo=1.0, w_hi=2.0):
    w = np.linspace(w_lo, w_hi, values.size)
    return SpectralAmplitude(w, values.astype(complex))


def brute_fwhm(tau, r):
    """Exhaustive threshold-crossing scan, independent of the library path."""
    level = 0.5 * r.max()
    above = [i for i, v in enumerate(r) if v >= level]
    i0, i1 = above[0], above[-1]

    def cross(a, b):
        return tau[a] + (level - r[a]) * (tau[b] - tau[a]) / (r[b] - r[a])

    return cross(i1, i1 + 1) - cross(i0, i0 - 1)


def test_rectangle_trace_width():
    """Rectangular R of width w_rect, built directly as a trace."""
    tau = np.linspace(-50, 50, 2001)
    r = np.where(np.abs(tau) <= 10.0, 1.0, 0.0)
    t = CorrelationTrace(tau, r, nu_c_thz=282.0)
    assert fwhm(t) == pytest.approx(20.0, abs=2 * (tau[1] - tau[0]))


def test_gaussian_sigma_relation():
    tau = np.linspace(-400, 400, 2 ** 14)
    sigma = 23.0
    r = np.exp(-tau ** 2 / (2 * sigma ** 2))
    t = CorrelationTrace(tau, r / r.max(), nu_c_thz=282.0)
    assert fwhm(t) == pytest.approx(2 * np.sqrt(2 * np.log(2)) * sigma, rel=1e-3)


def test_multilobed_outermost_vs_brute_force():
    tau = np.linspace(-100, 100, 8001)
    r = (np.exp(-tau ** 2 / 18.0)
         + 0.6 * np.exp(-(tau - 40) ** 2 / 8.0)
         + 0.6 * np.exp(-(tau + 35) ** 2 / 8.0))
    r /= r.max()
    t = CorrelationTrace(tau, r, nu_c_thz=282.0)
    assert fwhm(t, mode="outermost") == pytest.approx(brute_fwhm(tau, r), rel=1e-12)
    assert fwhm(t, mode="central") < 15.0 < fwhm(t, mode="outermost")


def test_cycles_examples():
    assert cycles(4.4, 282.0) == pytest.approx(1.24, abs=0.005)
    assert cycles(26.6, 282.0) == pytest.approx(7.5, abs=0.01)
    nu = 313.0
    assert cycles(1e3 / nu, nu) == pytest.approx(1.0, rel=1e-12)


def test_parseval(amp10):
    """sum |psi H|^2 d_omega = 2 pi sum |psi_tilde|^2 d_tau with
    psi_tilde = (d_omega / 2 pi) * transform values."""
    trace = sfg_noncollinear(amp10, pad=8, normalize=False)
    dw = amp10.delta_omega
    lhs = np.sum(np.abs(amp10.values) ** 2) * dw
    psi_tilde_sq = (dw / (2 * np.pi)) ** 2 * trace.values
    rhs = 2 * np.pi * np.sum(psi_tilde_sq) * trace.delta_tau
    assert rhs == pytest.approx(lhs, rel=1e-9)


def test_fft_matches_direct_quadrature(amp10, rng):
    sfg_noncollinear(amp10, pad=8, verify=True)        # in-op cross-check must hold
    n = amp10.omega_grid.size
    n_pad = n * 8
    j = np.arange(n)
    spect = np.abs(np.fft.ifft(amp10.values, n_pad) * n_pad) ** 2
    peak = spect.max()
    for k in rng.integers(0, n_pad, 6):
        direct = np.sum(amp10.values * np.exp(2j * np.pi * j * k / n_pad))
        ref = abs(direct) ** 2
        # relative where R is significant; round-off floor 1e-8 of peak below
        assert abs(spect[k] - ref) <= 1e-8 * max(ref, 1e-8 * peak)


def test_global_phase_and_linear_phase_invariance(amp10):
    base = fwhm(sfg_noncollinear(amp10, pad=8))
    rot = SpectralAmplitude(amp10.omega_grid, amp10.values * np.exp(1j * 0.83),
                            geometry=amp10.geometry)
    assert fwhm(sfg_noncollinear(rot, pad=8)) == pytest.approx(base, abs=1e-12)
    shifted = SpectralAmplitude(amp10.omega_grid,
                                amp10.values * np.exp(1j * amp10.omega_grid * 37.0),
                                geometry=amp10.geometry)
    trace = sfg_noncollinear(shifted, pad=8)
    assert fwhm(trace) == pytest.approx(base, abs=trace.delta_tau)


def test_collinear_equals_noncollinear_on_half_band():
    """For a symmetric real spectrum, the collinear trace equals the
    noncollinear trace built from the half-band above omega_p / 2."""
    w = np.linspace(1.0, 2.0, 4096)
    wp = 3.0   # degenerate at 1.5, inside the grid
    vals = np.exp(-(w - 1.5) ** 2 / 0.02)
    amp = SpectralAmplitude(w, vals.astype(complex))
    col = sfg_collinear(amp, wp, pad=8, normalize=False)
    half = SpectralAmplitude(w, np.where(w >= 1.5, vals, 0.0).astype(complex))
    non = sfg_noncollinear(half, pad=8, normalize=False)
    assert np.allclose(col.values, non.values, rtol=1e-12, atol=1e-9 * col.values.max())


def test_collinear_needs_grid_past_degenerate(amp10):
    with pytest.raises(DomainError, match="omega_p / 2"):
        sfg_collinear(amp10, 2 * amp10.omega_grid[-1] + 1.0)


def test_flagged_cells_rejected(device10):
    from chirpedqpm import spectrum_scan

    amp = spectrum_scan(device10, 0.55, 1.2, 64)
    assert np.any(amp.flagged)
    with pytest.raises(DomainError, match="flagged"):
        sfg_noncollinear(amp)


def test_tau_grid_spacing_consistency(amp10):
    pad = 8
    trace = sfg_noncollinear(amp10, pad=pad)
    n_pad = amp10.omega_grid.size * pad
    assert trace.delta_tau == pytest.approx(2 * np.pi / (n_pad * amp10.delta_omega), rel=1e-14)


def test_compression_monotonicity(device10, amp10, phase10):
    wc = lambda_to_omega(1.064)
    from chirpedqpm import measure_gdd

    gdd = measure_gdd(phase10, wc)
    widths = {}
    for name, comp in (("perfect", PerfectCompensator(reference=amp10)),
                       ("quadratic", QuadraticCompensator(gdd_fs2=-gdd, omega_c=wc)),
                       ("identity", IdentityCompensator())):
        widths[name] = fwhm(sfg_noncollinear(apply_compensator(comp, amp10), pad=8))
    assert widths["perfect"] <= widths["quadratic"] <= widths["identity"]


def test_peak_normalization_flag(amp10):
    t = sfg_noncollinear(amp10, pad=8)
    assert t.values.max() == pytest.approx(1.0, abs=0)
    assert np.all(t.values >= 0)
