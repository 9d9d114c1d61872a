"""Exception types shared across the package."""


class QubitSimError(Exception):
    """Base class for every error raised by qubitsim."""


class DimensionError(QubitSimError):
    """State or operator size outside the supported 2x2 / 4x4 range."""


class InvalidStateError(QubitSimError):
    """Vector or matrix violates a state invariant (norm, hermiticity, trace, positivity)."""


class InvalidOverlapError(QubitSimError):
    """Environment-overlap magnitude exceeds 1."""


class GeometryError(QubitSimError):
    """Slit geometry outside its far-field validity range."""


class StepSizeError(QubitSimError):
    """Integration step too coarse for the requested evolution."""


class NumericalInstabilityError(QubitSimError):
    """A trajectory sample breached trace, hermiticity, or positivity bounds."""


class DomainError(QubitSimError):
    """Scalar argument outside the function's domain."""


class SamplingError(QubitSimError):
    """Sampling grid too coarse to resolve the requested oscillation."""
