"""
Error hierarchy shared by the algebra, state and measure packages.

Every domain failure derives from ``SuperqError`` (itself a ``ValueError``),
so callers that only care about bad values can keep catching ``ValueError``.
The CLI prints the class name of the error it reports.
"""

from typing import Any


class SuperqError(ValueError):
    """Base class for domain errors."""


class FormatError(SuperqError):
    """Shapes, formats or algebra sizes do not match."""


class ParityError(SuperqError):
    """An element, matrix or state violates its parity layout."""


class NoninvertibleError(SuperqError):
    """The body needed for an inversion is (numerically) zero."""


class UnsupportedConventionError(SuperqError):
    """The requested operation has no model under the chosen conventions."""


class NotNormalizedError(SuperqError):
    """A state misses its normalization condition."""


class NumericError(SuperqError):
    """A series did not converge within the configured term cap."""


class UndefinedTangleError(SuperqError):
    """The even supertangle cannot be solved for.

    Both sides of ``tau * x22 x22^# = 4 f f^#`` are attached so callers can
    still inspect the implicit relation.
    """

    def __init__(self, message: str, coefficient: Any, rhs: Any) -> None:
        super().__init__(message)
        self.coefficient = coefficient
        self.rhs = rhs


class CalibrationError(SuperqError):
    """No single sdTr arrangement class survived the calibration oracles."""

    def __init__(self, message: str, evidence: list[dict] | None = None):
        super().__init__(message)
        self.evidence = evidence or []


class InputError(Exception):
    """An input file could not be read or parsed."""
