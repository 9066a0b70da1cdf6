"""
Domain exceptions shared by every layer.
Infrastructure Layer - Errors Package
"""

from typing import Optional, Tuple


class VerificationError(Exception):
    """
    Base class for every error raised by the verification engine.

    Each subclass carries the CLI exit code it maps to.
    """

    exit_code: int = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class BadParameter(VerificationError):
    """A parameter violates a family constraint or a command-line contract."""

    exit_code = 2

    def __init__(self, message: str, clause: Optional[str] = None):
        super().__init__(message)
        self.clause = clause


class Unsupported(VerificationError):
    """Requested operation is outside what the engine implements."""

    exit_code = 2


class OutOfDomain(VerificationError):
    """Sample point lies outside a non-periodic domain axis."""

    exit_code = 2


class ContractViolation(VerificationError):
    """Internal contract broken (mismatched signatures, formula drift, bad jet use)."""

    exit_code = 2


class NumericalAbort(VerificationError):
    """Base for errors that stop a numerical run at a specific sample."""

    exit_code = 3

    def __init__(self, message: str, location: Optional[Tuple[float, float]] = None):
        if location is not None:
            message = f"{message} at (x, y) = ({location[0]:.6g}, {location[1]:.6g})"
        super().__init__(message)
        self.location = location


class BadLift(NumericalAbort):
    """Lift leaves the sphere or quadric constraint."""


class DegenerateImmersion(NumericalAbort):
    """Induced metric is singular or not positive definite."""


class GridTooCoarse(NumericalAbort):
    """Grid has too few nodes for the finite-difference stencils."""


class ReportWriteError(VerificationError):
    """Report or field dump could not be written."""

    exit_code = 4
