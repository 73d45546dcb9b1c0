"""Exception types raised by narrowband."""

__all__ = [
    "NarrowbandError", "ParameterError", "SingularPointError", "SingularSystemError",
    "BandEdgeError", "ExtractionError", "BracketError", "NoDipError",
    "UndefinedModelError", "InfeasibleTargetError",
]


class NarrowbandError(Exception):
    """Base class for all domain errors."""


class ParameterError(NarrowbandError, ValueError):
    """A parameter lies outside its physical domain."""


class SingularPointError(NarrowbandError):
    """A closed-form amplitude was evaluated at a pole or 0/0 point."""


class SingularSystemError(NarrowbandError):
    """The stationary scattering system has no unique solution."""

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class BandEdgeError(NarrowbandError):
    """The requested energy lies outside the lattice band."""


class ExtractionError(NarrowbandError):
    """Plane-wave fit of the asymptotic lattice amplitudes failed."""


class BracketError(NarrowbandError):
    """A half-maximum crossing could not be bracketed."""


class NoDipError(NarrowbandError):
    """The spectrum has no transparency dip (control field off)."""


class UndefinedModelError(NarrowbandError):
    """The far-detuned effective model is undefined for these parameters."""


class InfeasibleTargetError(NarrowbandError):
    """Inverse design did not converge to the requested line."""

    def __init__(self, message, residuals=None, iterations=None):
        super().__init__(message)
        self.residuals = residuals
        self.iterations = iterations
