"""Exception and warning types shared across the package."""


class IgscatterError(Exception):
    """Base class for all package-specific errors."""


class ModelParameterError(IgscatterError, ValueError):
    """Invalid statistical-model parameters or geodesic state."""


class ConfigError(IgscatterError, ValueError):
    """Malformed or incomplete scattering configuration."""


class SeriesDomainError(IgscatterError, ValueError):
    """Input lies outside the validity domain of a series expansion."""


class PhaseShiftBranchError(IgscatterError, ArithmeticError):
    """Matching condition evaluated at a branch boundary (singular denominator)."""


class QuadratureError(IgscatterError, RuntimeError):
    """Adaptive quadrature did not converge to the requested tolerance."""


class GeodesicIntegrationError(IgscatterError, RuntimeError):
    """Geodesic integration failed; carries the last valid state."""

    def __init__(self, message, last_tau=None, last_state=None):
        super().__init__(message)
        self.last_tau = last_tau
        self.last_state = last_state


class TargetNotReachedError(GeodesicIntegrationError):
    """The momentum target band was not entered before the integration horizon."""


class RegimeWarning(UserWarning):
    """Result produced outside the trusted low-energy / weak-correlation regime."""
