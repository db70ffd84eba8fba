"""
Domain errors raised by purimetrics.

All of them derive from ValueError so callers that only know about bad input
values keep working.
"""

from typing import Optional


class PurimetricsError(ValueError):
    """Base class. `bound` / `magnitude` are set when a numeric limit was violated."""

    def __init__(
        self,
        message: str,
        *,
        bound: Optional[float] = None,
        magnitude: Optional[float] = None,
    ):
        if bound is not None and magnitude is not None:
            message = f"{message} (bound={bound:.3g}, observed={magnitude:.3g})"
        super().__init__(message)
        self.bound = bound
        self.magnitude = magnitude


# --- density-core ---
class InvalidMatrix(PurimetricsError):
    pass


class DimensionMismatch(PurimetricsError):
    pass


class NotHermitian(PurimetricsError):
    pass


class NotUnitTrace(PurimetricsError):
    pass


class NotPositive(PurimetricsError):
    pass


class ZeroPower(PurimetricsError):
    pass


class EigenFailure(PurimetricsError):
    pass


class InvalidSpectrum(PurimetricsError):
    pass


# --- bloch-basis ---
class PoincareViolation(PurimetricsError):
    pass


# --- measures ---
class KOutOfRange(PurimetricsError):
    pass


class WrongDimension(PurimetricsError):
    pass


class InvalidXY(PurimetricsError):
    pass


class UnknownMeasure(PurimetricsError):
    pass


# --- channels ---
class ZeroPurity(PurimetricsError):
    pass


# --- entanglement ---
class NotNormalized(PurimetricsError):
    pass


# --- analysis ---
class ZeroEigenvalue(PurimetricsError):
    pass


class EmptyRange(PurimetricsError):
    pass


# --- I/O ---
class FormatError(PurimetricsError):
    pass
