import numpy as np
import pytest

from chirpedqpm import (Geometry, QpmDevice, default_media, sample_spectral_phase,
                        spectrum_scan)
from chirpedqpm.units import RAD_PER_CM2_TO_RAD_PER_UM2

ETA_PAPER = 367.112 * RAD_PER_CM2_TO_RAD_PER_UM2   # rad/um^2


@pytest.fixture(scope="session")
def media():
    return default_media()


@pytest.fixture(scope="session")
def mgslt(media):
    return media["mgslt"]


@pytest.fixture(scope="session")
def sf14(media):
    return media["sf14"]


@pytest.fixture(scope="session")
def vacuum(media):
    return media["vacuum"]


@pytest.fixture(scope="session")
def device10(mgslt):
    """The fabricated 10 %-chirp device: 20 mm, 8.000 um input period."""
    return QpmDevice(medium=mgslt, length_um=20000.0, lambda0_um=8.000,
                     eta=ETA_PAPER, pump_wavelength_um=0.532, temperature_K=293.0)


@pytest.fixture(scope="session")
def device47(mgslt):
    """47 %-chirp collinear design: period 8.000 -> 11.765 um over 20 mm."""
    from chirpedqpm import design_chirp

    eta = design_chirp(8.000, 11.765, 20000.0)
    return QpmDevice(medium=mgslt, length_um=20000.0, lambda0_um=8.000,
                     eta=eta, pump_wavelength_um=0.532, temperature_K=293.0)


@pytest.fixture(scope="session")
def geom025():
    return Geometry(0.25)


@pytest.fixture(scope="session")
def amp10(device10, geom025):
    """Full-resolution spectrum of the 10 % device at phi = 0.25 deg."""
    return spectrum_scan(device10, 0.70, 1.80, 2 ** 14, geom025)


@pytest.fixture(scope="session")
def phase10(device10, geom025):
    return sample_spectral_phase(device10, 0.70, 1.80, 2 ** 14, geom025)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
