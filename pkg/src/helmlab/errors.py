"""Exception hierarchy shared across the package.

Everything numerical raises a subclass of HelmlabError so callers (CLI,
service) can separate usage mistakes from numerical failures.
"""


class HelmlabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HelmlabError):
    """Argument outside the mathematical domain of an operation."""


class CurveSpecError(HelmlabError):
    """Malformed curve specification string or invalid curve parameters."""


class RegionSpecError(HelmlabError):
    """Malformed region specification or invalid region parameters."""


class ResolutionError(HelmlabError):
    """Discretization too coarse (or too degenerate) for the request."""


class SingularSystemError(HelmlabError):
    """Dense solve failed or produced an untrustworthy residual."""

    def __init__(self, message: str, condition_estimate: float | None = None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class MismatchError(HelmlabError):
    """Inconsistent combination of solver artifacts (curve/wave/density)."""


class TruncationError(HelmlabError):
    """Series truncation below the documented safe bound."""


class ProximityError(HelmlabError):
    """Field evaluation requested too close to the boundary."""


class ConvergenceError(HelmlabError):
    """Iterative solver hit its iteration cap."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class PositivityError(HelmlabError):
    """A quantity required to be positive was not."""


class OverflowRangeError(HelmlabError):
    """Result exceeds double-precision range."""
