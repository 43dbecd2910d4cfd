"""Exception hierarchy for structural and numerical failures."""


class ChanspecError(Exception):
    """Base class for all library-specific errors."""


class StructuralError(ChanspecError):
    """Input violates a structural contract (shape, finiteness, hermiticity)."""


class NotTracePreservingError(StructuralError):
    """First row of the block representation deviates from (1, 0, ..., 0)."""


class NonHermitianImageError(StructuralError):
    """Map is not Hermiticity-preserving: block form has imaginary residue."""


class MalformedSpectrumError(StructuralError):
    """Eigenvalue multiset cannot be closed under complex conjugation."""


class UnsupportedDimensionError(ChanspecError):
    """Operation is defined only for a specific Hilbert-space dimension."""


class NotRealizableError(ChanspecError):
    """Requested spectrum violates the relevant complete-positivity condition."""

    def __init__(self, message, inequality=""):
        super().__init__(message)
        self.inequality = inequality


class NumericsError(ChanspecError):
    """A numerical routine failed to converge or conditioning is too poor."""
