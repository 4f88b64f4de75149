"""Exception types shared across the package."""


class CloakSimError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CloakSimError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a singular point (origin, interface)."""


class CapabilityError(CloakSimError, ValueError):
    """Requested order/size exceeds what the implementation supports."""


class DegenerateMapError(CloakSimError):
    """A coordinate map has a singular Jacobian where one is required."""


class ResonanceError(CloakSimError):
    """A modal denominator fell below its floor: the frequency is inadmissible.

    Attributes:
        n: multipole degree of the offending mode.
        quantity: name of the near-vanishing denominator.
    """

    def __init__(self, n, quantity, value=None):
        self.n = n
        self.quantity = quantity
        self.value = value
        msg = f"near-resonant mode n={n}: |{quantity}| below floor"
        if value is not None:
            msg += f" (magnitude {value:.3e})"
        super().__init__(msg)


class AccuracyError(CloakSimError):
    """A quadrature or iteration failed to reach the requested tolerance.

    Attributes:
        estimate: best value obtained.
        achieved: error estimate actually reached.
    """

    def __init__(self, message, estimate=None, achieved=None):
        self.estimate = estimate
        self.achieved = achieved
        super().__init__(message)


class ConfigError(CloakSimError, ValueError):
    """A run configuration document is malformed or has unknown fields."""
