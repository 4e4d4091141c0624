import numpy as np
import pytest

from chirpedqpm import (ConfigError, DomainError, Geometry, QpmDevice, design_chirp,
                        grating_wavevector, phase_mismatch, phase_mismatch_masked,
                        spectral_amplitude, tuning_curve, wavevector)
from chirpedqpm.units import lambda_to_omega

from conftest import ETA_PAPER


def test_unchirped_grating_constant(mgslt):
    dev = QpmDevice(mgslt, 20000.0, 8.000, 0.0, 0.532)
    for z in (0.0, 5000.0, 20000.0):
        assert grating_wavevector(dev, z) == pytest.approx(2 * np.pi / 8.0, rel=1e-15)


def test_grating_wavevector_paper_values(device10):
    assert grating_wavevector(device10, 0.0) == pytest.approx(2 * np.pi / 8.0, rel=1e-12)
    k_end = grating_wavevector(device10, 20000.0)
    assert k_end == pytest.approx(0.711976, abs=5e-7)
    assert 2 * np.pi / k_end == pytest.approx(8.825, abs=5e-4)


def test_grating_wavevector_domain(device10):
    with pytest.raises(DomainError):
        grating_wavevector(device10, -1.0)
    with pytest.raises(DomainError):
        grating_wavevector(device10, 20001.0)


def test_design_chirp_paper_device():
    eta = design_chirp(8.000, 8.825, 20000.0)
    assert eta * 1e8 == pytest.approx(367.112, abs=0.5)   # rad/cm^2, 3 significant figures


def test_design_chirp_47pct():
    eta = design_chirp(8.000, 11.765, 20000.0)
    assert eta * 1e8 == pytest.approx(1256.5, rel=2e-3)


def test_design_chirp_zero():
    assert design_chirp(8.0, 8.0, 20000.0) == 0.0


def test_design_chirp_roundtrip(mgslt):
    eta = design_chirp(8.000, 8.825, 20000.0)
    dev = QpmDevice(mgslt, 20000.0, 8.000, eta, 0.532)
    lam_end = 2 * np.pi / grating_wavevector(dev, 20000.0)
    assert lam_end == pytest.approx(8.825, rel=1e-10)


def test_k_strictly_decreasing(device10):
    z = np.linspace(0, 20000.0, 512)
    k = grating_wavevector(device10, z)
    assert np.all(np.diff(k) < 0)
    assert np.all(np.diff(2 * np.pi / k) > 0)


def test_phase_mismatch_collinear_degenerate_reduction(device10):
    """At phi = 0 the mismatch must equal k(wp) - k(w) - k(wp-w) - K(z)."""
    wp = device10.omega_p
    med, T = device10.medium, device10.temperature_K
    for w in (0.5 * wp, 0.43 * wp, 0.61 * wp):
        direct = (wavevector(med, wp, T) - wavevector(med, w, T)
                  - wavevector(med, wp - w, T) - grating_wavevector(device10, 700.0))
        assert phase_mismatch(device10, w, 700.0) == pytest.approx(direct, rel=1e-12)


def test_phase_mismatch_symmetry_collinear(device10, rng):
    """Exact omega <-> omega_p - omega symmetry in the collinear case."""
    wp = device10.omega_p
    w = rng.uniform(0.38 * wp, 0.62 * wp, 1000)
    z = rng.uniform(0, 20000.0, 1000)
    a = phase_mismatch(device10, w, 0.0) + device10.eta * z
    b = phase_mismatch(device10, wp - w, 0.0) + device10.eta * z
    assert np.max(np.abs(a - b)) < 1e-12 * np.max(np.abs(a))


def test_phase_mismatch_near_symmetry_noncollinear(device10, geom025):
    """At finite external angle the printed mismatch is only approximately
    symmetric: the idler of a photon held at a fixed angle exits at a
    slightly different angle.  The residual scales with sin^2(phi)."""
    wp = device10.omega_p
    w = np.linspace(0.40 * wp, 0.60 * wp, 2001)
    a = phase_mismatch(device10, w, 0.0, geom025)
    b = phase_mismatch(device10, wp - w, 0.0, geom025)
    asym = np.max(np.abs(a - b))
    assert 0 < asym < 1e-4          # small but decidedly nonzero at 0.25 deg
    quarter = Geometry(0.125)
    a = phase_mismatch(device10, w, 0.0, quarter)
    b = phase_mismatch(device10, wp - w, 0.0, quarter)
    assert np.max(np.abs(a - b)) < 0.3 * asym   # ~sin^2 phi scaling


def test_phase_mismatch_continuity(device10, geom025):
    w = np.linspace(lambda_to_omega(1.79), lambda_to_omega(0.71), 20000)
    dk = phase_mismatch(device10, w, 0.0, geom025)
    assert np.max(np.abs(np.diff(dk))) < 1e-3   # rad/um per ~6e-5 rad/fs step
    # linear in z by construction
    z = np.linspace(0, 20000.0, 64)
    dkz = phase_mismatch(device10, 0.5 * device10.omega_p, 0.0, geom025) + device10.eta * z
    assert np.allclose(np.diff(dkz, 2), 0.0, atol=1e-12)


def test_phase_matching_root_exists_across_band(device10, geom025):
    """Delta k(omega, z*; phi) = 0 has a root z* in [0, L] over 0.80-1.60 um."""
    from scipy.optimize import brentq

    for lam in np.linspace(0.80, 1.60, 41):
        w = lambda_to_omega(lam)

        def g(z):
            return phase_mismatch(device10, w, z, geom025)

        assert g(0.0) * g(device10.length_um) < 0, f"no sign change at {lam} um"
        z_star = brentq(g, 0.0, device10.length_um, xtol=1e-9)
        assert 0 <= z_star <= device10.length_um


def test_angle_too_large_raises(device10):
    """A short-wavelength signal held at a large external angle would need
    an idler transverse momentum beyond its total momentum."""
    with pytest.raises(DomainError, match="square-root"):
        phase_mismatch(device10, 0.75 * device10.omega_p, 0.0, Geometry(89.0))


def test_masked_flags_instead_of_raising(device10):
    w = np.array([0.5 * device10.omega_p, lambda_to_omega(0.30)])   # second outside range
    out = phase_mismatch_masked(device10, w, 0.0)
    assert np.isfinite(out[0]) and np.isnan(out[1])


def test_tuning_curve_phi_symmetry(device10):
    lam = np.linspace(0.80, 1.60, 41) * 1.0
    mat = tuning_curve(device10, lam, [-0.25, 0.25])
    assert np.allclose(mat[:, 0], mat[:, 1], rtol=1e-10)


def test_tuning_curve_single_cell_matches_direct(device10, geom025):
    lam = 1.2
    mat = tuning_curve(device10, [lam], [0.25])
    psi = spectral_amplitude(device10, lambda_to_omega(lam), geom025)
    assert mat[0, 0] == pytest.approx(abs(psi) ** 2 / (2 * np.pi), rel=1e-12)


def test_tuning_curve_energy_in_boxes(device10):
    """>= 99 % of the row-integrated intensity of the scanned band falls in
    lambda 0.79-1.61 um for angles inside the acceptance box."""
    lam = np.linspace(0.70, 1.80, 221)
    phis = np.linspace(0.11, 0.39, 15)
    mat = tuning_curve(device10, lam, phis)
    mat = np.where(np.isnan(mat), 0.0, mat)
    total = mat.sum()
    inside = mat[(lam >= 0.79) & (lam <= 1.61), :].sum()
    assert inside / total >= 0.99


def test_tuning_curve_flags_out_of_domain_cells(device10):
    mat = tuning_curve(device10, [0.30, 1.2], [0.25])
    assert np.isnan(mat[0, 0]) and np.isfinite(mat[1, 0])


def test_tuning_curve_delta_k_mode(device10):
    lam = np.array([1.064])
    mat = tuning_curve(device10, lam, [0.0], value="delta_k")
    direct = phase_mismatch(device10, lambda_to_omega(1.064), 0.0)
    assert mat[0, 0] == pytest.approx(direct, rel=1e-12)


def test_device_invariants_enforced(mgslt):
    with pytest.raises(ConfigError):
        QpmDevice(mgslt, -1.0, 8.0, ETA_PAPER, 0.532)
    with pytest.raises(ConfigError):
        QpmDevice(mgslt, 20000.0, 8.0, 1.0, 0.532)        # K(L) < 0
    with pytest.raises(ConfigError):
        QpmDevice(mgslt, 20000.0, 8.0, ETA_PAPER, 0.2)    # pump outside range
