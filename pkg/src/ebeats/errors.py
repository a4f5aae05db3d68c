"""Exception types shared across the package."""

from __future__ import annotations


class EbeatsError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(EbeatsError):
    """Matrix expected to be Hermitian is not, beyond tolerance."""


class NoConvergenceError(EbeatsError):
    """Eigensolver failed or the reconstruction residual is too large."""


class DimensionMismatchError(EbeatsError):
    """Operand shapes are inconsistent with the declared Hilbert-space layout."""


class NotPositiveError(EbeatsError):
    """Density matrix has an eigenvalue below the negativity clip."""


class NotDensityError(EbeatsError):
    """Matrix fails the density-matrix checks (hermiticity/trace/positivity)."""


class NotNormalizedError(EbeatsError):
    """State vector norm differs from 1 beyond tolerance."""


class GammaOutOfRangeError(EbeatsError):
    """Werner mixing parameter outside [0, 1]."""


class TruncationTooSmallError(EbeatsError):
    """Fock-space cutoff leaves more probability mass in the tail than allowed."""


class NotIdenticalAtomsError(EbeatsError):
    """Closed-form propagation requires g_a = g_b and equal detunings."""


class ExactTooLargeError(EbeatsError):
    """Full-space evolution refused: truncation dimension above the cost guard."""


class ResolutionTooCoarseError(EbeatsError):
    """Time grid too coarse to resolve the narrowest detected beat."""

    def __init__(self, message: str, suggested_steps: int | None = None):
        super().__init__(message)
        self.suggested_steps = suggested_steps


class ScanCellError(EbeatsError):
    """A scan cell failed; carries the cell coordinates."""

    def __init__(self, intensity: float, tau: float, cause: Exception):
        super().__init__(f"scan cell failed at intensity={intensity!r}, tau={tau!r}: {cause}")
        self.intensity = intensity
        self.tau = tau
        self.cause = cause


class ConfigError(EbeatsError):
    """Run configuration is invalid; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
