"""Exception hierarchy and the explicit undefined-result marker."""

from __future__ import annotations

from dataclasses import dataclass


class SwapOptError(Exception):
    """Base class for every error raised by swapopt."""


class InvalidArgumentError(SwapOptError, ValueError):
    pass


class CapacityError(SwapOptError):
    """An enumeration or construction would exceed its configured cap."""


class UnsupportedError(SwapOptError):
    """The operation is only defined for a particular sequence length."""


class IngestionError(SwapOptError, ValueError):
    """Malformed input data. ``row`` is the 1-based CSV line when known."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class ConsistencyError(SwapOptError, AssertionError):
    """An internal invariant was violated. Always a bug."""


@dataclass(frozen=True)
class Undefined:
    """A result that has no value, with the reason it has none.

    Used instead of NaN or None wherever a quantity is mathematically
    undefined (e.g. the optimality score of a point mass).
    """

    reason: str

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return "undefined"


def is_undefined(value) -> bool:
    return isinstance(value, Undefined)
