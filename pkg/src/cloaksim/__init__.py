"""Spectral simulator for spherical electromagnetic approximate cloaking."""

__version__ = "0.1.0"

from .errors import (
    AccuracyError,
    CapabilityError,
    CloakSimError,
    ConfigError,
    DegenerateMapError,
    DomainError,
    ResonanceError,
    SingularityError,
)
from .geometry import CloakParams
from .harmonics import ModeIndex
from .scaled import ScaledComplex

__all__ = [
    "AccuracyError",
    "CapabilityError",
    "CloakParams",
    "CloakSimError",
    "ConfigError",
    "DegenerateMapError",
    "DomainError",
    "ModeIndex",
    "ResonanceError",
    "ScaledComplex",
    "SingularityError",
    "__version__",
]
