"""Unit conventions shared across the package.

Internal unit system: length in um, time in fs, angular frequency in
rad/fs, wavevector in rad/um, chirp rate in rad/um^2.  This keeps every
exponent appearing in the two-photon amplitude O(1).
"""

import numpy as np

# Speed of light in um/fs.
C0 = 0.299792458

# Unit conversion factors.
RAD_PER_CM2_TO_RAD_PER_UM2 = 1e-8   # 1 cm^2 = 1e8 um^2
MM_TO_UM = 1e3
NM_TO_UM = 1e-3


def lambda_to_omega(lambda_um):
    """Vacuum wavelength [um] -> angular frequency [rad/fs]."""
    return 2.0 * np.pi * C0 / np.asarray(lambda_um, dtype=float)


def omega_to_lambda(omega):
    """Angular frequency [rad/fs] -> vacuum wavelength [um]."""
    return 2.0 * np.pi * C0 / np.asarray(omega, dtype=float)


def omega_to_thz(omega):
    """Angular frequency [rad/fs] -> ordinary frequency [THz]."""
    return np.asarray(omega, dtype=float) / (2.0 * np.pi) * 1e3


def cycles(width_fs, nu_c_thz):
    """Number of optical cycles spanned by ``width_fs`` at center frequency ``nu_c_thz``.

    One cycle is 1/nu_c; 1 THz = 1e-3 / fs, so this is width * nu_c with
    the unit mismatch absorbed.
    """
    if width_fs <= 0 or nu_c_thz <= 0:
        raise ValueError("width and center frequency must be positive")
    return width_fs * nu_c_thz * 1e-3
