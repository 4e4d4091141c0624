"""Material dispersion: Sellmeier media, refractive index and wavevector.

Media are loaded from YAML documents and are immutable afterwards; all
evaluations are pure functions of their inputs.  Two dispersion forms are
supported:

``standard``
    Three-oscillator Sellmeier, coefficients ``[B1, B2, B3, C1, C2, C3]``
    with C_i in um^2::

        n^2(lambda) = 1 + sum_i B_i lambda^2 / (lambda^2 - C_i)

    Temperature independent; a temperature argument different from the
    medium's reference temperature is accepted and ignored (one warning
    per medium).

``temperature_extended``
    Two-pole form with temperature corrections, coefficients
    ``[a1..a6, b1..b5]``, lambda in um, T in kelvin::

        f = (T_C - 24.5) (T_C + 24.5 + 2*273.16),  T_C = T - 273.15
        n^2 = a1 + b1 f + (a2 + b2 f)/(lambda^2 - (a3 + b3 f)^2)
                       + (a4 + b4 f)/(lambda^2 - (a5 + b5 f)^2)
                       - a6 lambda^2
"""

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import yaml

from .errors import ConfigError, DomainError
from .units import C0, omega_to_lambda

__all__ = [
    "SellmeierForm",
    "Medium",
    "load_medium",
    "load_media_file",
    "default_media",
    "refractive_index",
    "wavevector",
]

_COEFF_COUNT = {"standard": 6, "temperature_extended": 11}

# Media whose standard-form temperature shortfall was already reported.
_warned_media = set()


class SellmeierForm(str, Enum):
    STANDARD = "standard"
    TEMPERATURE_EXTENDED = "temperature_extended"


@dataclass(frozen=True)
class Medium:
    """A dispersive medium with an extraordinary-index Sellmeier model."""

    name: str
    sellmeier_form: SellmeierForm
    coefficients: tuple
    valid_range: tuple        # (lambda_min, lambda_max) in um
    reference_temperature: float = 293.0   # kelvin

    def __post_init__(self):
        lo, hi = self.valid_range
        if not (0 < lo < hi):
            raise ConfigError(f"medium {self.name!r}: empty valid range {self.valid_range}")


def load_medium(config: dict) -> Medium:
    """Validate one medium entry (parsed key-value document) into a Medium."""
    if not isinstance(config, dict):
        raise ConfigError("medium entry must be a mapping")
    for field in ("name", "form", "coefficients", "valid_range_um"):
        if field not in config:
            raise ConfigError(f"medium entry missing field {field!r}")
    try:
        form = SellmeierForm(config["form"])
    except ValueError:
        raise ConfigError(f"unknown Sellmeier form {config['form']!r}") from None
    coeffs = tuple(float(c) for c in config["coefficients"])
    expected = _COEFF_COUNT[form.value]
    if len(coeffs) != expected:
        raise ConfigError(
            f"medium {config['name']!r}: coefficient count mismatch "
            f"(form {form.value!r} needs {expected}, got {len(coeffs)})"
        )
    rng = config["valid_range_um"]
    if len(rng) != 2:
        raise ConfigError(f"medium {config['name']!r}: valid_range_um must be [lo, hi]")
    return Medium(
        name=str(config["name"]),
        sellmeier_form=form,
        coefficients=coeffs,
        valid_range=(float(rng[0]), float(rng[1])),
        reference_temperature=float(config.get("reference_temperature_K", 293.0)),
    )


def load_media_file(path) -> dict:
    """Load a media YAML document: a mapping key -> medium entry."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict) or "media" not in doc:
        raise ConfigError(f"{path}: expected a top-level 'media' mapping")
    media = {}
    for key, entry in doc["media"].items():
        entry = dict(entry)
        entry.setdefault("name", key)
        media[key] = load_medium(entry)
    return media


def default_media() -> dict:
    """The media bundled with the package (vacuum, MgSLT, SF14)."""
    from importlib.resources import files

    return load_media_file(files("chirpedqpm.data") / "media.yaml")


def _check_range(medium: Medium, lambda_um):
    lam = np.asarray(lambda_um, dtype=float)
    lo, hi = medium.valid_range
    if np.any(lam < lo) or np.any(lam > hi):
        bad = lam[(lam < lo) | (lam > hi)]
        raise DomainError(
            f"wavelength {np.atleast_1d(bad).flat[0]:.6g} um outside valid range "
            f"[{lo:g}, {hi:g}] um of medium {medium.name!r}"
        )
    return lam


def _n_squared(medium: Medium, lam, T_K):
    c = medium.coefficients
    lam2 = lam * lam
    if medium.sellmeier_form is SellmeierForm.STANDARD:
        if T_K != medium.reference_temperature and medium.name not in _warned_media:
            _warned_media.add(medium.name)
            warnings.warn(
                f"medium {medium.name!r} has no temperature model; "
                f"T={T_K:g} K ignored (reference {medium.reference_temperature:g} K)",
                stacklevel=3,
            )
        B1, B2, B3, C1, C2, C3 = c
        return 1.0 + B1 * lam2 / (lam2 - C1) + B2 * lam2 / (lam2 - C2) + B3 * lam2 / (lam2 - C3)
    a1, a2, a3, a4, a5, a6, b1, b2, b3, b4, b5 = c
    T_C = T_K - 273.15
    f = (T_C - 24.5) * (T_C + 24.5 + 2 * 273.16)
    return (a1 + b1 * f
            + (a2 + b2 * f) / (lam2 - (a3 + b3 * f) ** 2)
            + (a4 + b4 * f) / (lam2 - (a5 + b5 * f) ** 2)
            - a6 * lam2)


def refractive_index(medium: Medium, lambda_um, T_K: float = 293.0):
    """Extraordinary refractive index n_e(lambda, T).

    lambda_um may be a scalar or array; every value must lie inside the
    medium's valid range.
    """
    lam = _check_range(medium, lambda_um)
    n2 = _n_squared(medium, lam, T_K)
    if np.any(n2 <= 0):
        raise DomainError(f"medium {medium.name!r}: n^2 <= 0 at lambda={lam[n2 <= 0].flat[0]:g} um")
    n = np.sqrt(n2)
    return float(n) if np.isscalar(lambda_um) else n


def wavevector(medium: Medium, omega, T_K: float = 293.0):
    """Wavevector k(omega) = n_e(omega) * omega / c0 in rad/um."""
    lam = omega_to_lambda(omega)
    n = refractive_index(medium, lam if np.ndim(omega) else float(lam), T_K)
    return n * np.asarray(omega, dtype=float) / C0 if np.ndim(omega) else n * float(omega) / C0
