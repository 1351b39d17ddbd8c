"""Exception hierarchy shared by all padetau engines."""

from __future__ import annotations

__all__ = [
    "PadetauError",
    "InsufficientOrder",
    "ZeroConstantTerm",
    "BadNormalization",
    "NotSquare",
    "SingularMatrix",
    "DegenerateFamily",
    "ConsistencyError",
    "OddLength",
    "ParityViolation",
    "ShapeMismatch",
    "NonDiagonalizableLeading",
    "ResonantExponents",
    "ZeroParameter",
    "InvalidPartition",
]


class PadetauError(Exception):
    """Base class for all library errors."""


class InsufficientOrder(PadetauError):
    """A computation needs a series coefficient beyond the trusted order."""


class ZeroConstantTerm(PadetauError):
    """Inversion of a series whose constant term is zero."""


class BadNormalization(PadetauError):
    """A series family or matrix series violates its normalization."""


class NotSquare(PadetauError):
    """A determinant was requested of a non-square matrix."""


class SingularMatrix(PadetauError):
    """An exact linear solve hit a singular coefficient matrix."""


class DegenerateFamily(PadetauError):
    """A family's defining system determinant vanishes.

    `which` names the vanishing determinant so callers can report it.
    """

    def __init__(self, which: str, message: str | None = None):
        self.which = which
        super().__init__(message or f"degenerate family: {which} = 0")


class ConsistencyError(PadetauError):
    """Two routes that must agree exactly did not; indicates a bug."""


class OddLength(PadetauError):
    """A Pfaffian was requested of an odd-length word."""


class ParityViolation(PadetauError):
    """Word lengths violate an identity's parity requirements."""


class ShapeMismatch(PadetauError):
    """Row/column words have incompatible lengths."""


class NonDiagonalizableLeading(PadetauError):
    """The leading matrix at infinity is not diagonal."""


class ResonantExponents(PadetauError):
    """A zero divisor in the expansion recursion (repeated leading entries)."""


class ZeroParameter(PadetauError):
    """A system preset received a parameter that must be nonzero."""


class InvalidPartition(PadetauError):
    """A spectral-type partition is malformed or does not sum to the size."""
