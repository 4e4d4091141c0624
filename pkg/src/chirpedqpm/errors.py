"""Exception types.

ConfigError covers schema/validation problems in config or scenario
documents; DomainError covers physics-domain violations (out-of-range
wavelengths, unsolvable geometry, ...).  The CLI maps them to exit codes
2 and 3 respectively.
"""


class ChirpedQpmError(Exception):
    """Base class for package errors."""


class ConfigError(ChirpedQpmError):
    """Malformed or inconsistent configuration input."""


class DomainError(ChirpedQpmError):
    """Evaluation requested outside a physically valid domain."""
