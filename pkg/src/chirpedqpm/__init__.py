"""Ultrabroadband biphoton generation from chirped quasi-phase-matched crystals.

Simulates phase matching, two-photon spectral amplitudes, detected spectra
through an instrument model, and SFG temporal correlations under spectral
phase compensation.
"""

__version__ = "0.1.0"

from .biphoton import (SpectralAmplitude, SpectralPhaseCurve, band_edges, bandwidth_thz,
                       erfi_complex, faddeeva_w, mean_photon_number, sample_spectral_phase,
                       spectral_amplitude, spectral_amplitude_array, spectral_phase,
                       spectrum_scan, unwrap_phase)
from .compensation import (DelayElement, IdentityCompensator, PerfectCompensator,
                           PrismPairCompensator, QuadraticCompensator, apply_compensator,
                           measure_gdd, prism_pair_phase)
from .correlation import CorrelationTrace, cycles, fwhm, sfg_collinear, sfg_noncollinear
from .device import (Geometry, QpmDevice, design_chirp, grating_wavevector, phase_mismatch,
                     phase_mismatch_masked, tuning_curve)
from .errors import ChirpedQpmError, ConfigError, DomainError
from .instrument import (AcceptanceWindow, DetectorModel, default_detector,
                         detected_spectrum, detector_efficiency, load_detector_csv,
                         raw_counts_model)
from .media import (Medium, SellmeierForm, default_media, load_medium, load_media_file,
                    refractive_index, wavevector)

__all__ = [
    "__version__",
    "SpectralAmplitude", "SpectralPhaseCurve", "band_edges", "bandwidth_thz",
    "erfi_complex", "faddeeva_w", "mean_photon_number", "sample_spectral_phase",
    "spectral_amplitude", "spectral_amplitude_array", "spectral_phase", "spectrum_scan",
    "unwrap_phase",
    "DelayElement", "IdentityCompensator", "PerfectCompensator", "PrismPairCompensator",
    "QuadraticCompensator", "apply_compensator", "measure_gdd", "prism_pair_phase",
    "CorrelationTrace", "cycles", "fwhm", "sfg_collinear", "sfg_noncollinear",
    "Geometry", "QpmDevice", "design_chirp", "grating_wavevector", "phase_mismatch",
    "phase_mismatch_masked", "tuning_curve",
    "ChirpedQpmError", "ConfigError", "DomainError",
    "AcceptanceWindow", "DetectorModel", "default_detector", "detected_spectrum",
    "detector_efficiency", "load_detector_csv", "raw_counts_model",
    "Medium", "SellmeierForm", "default_media", "load_medium", "load_media_file",
    "refractive_index", "wavevector",
]
