# src/models/base.py
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any

Rational = Fraction

# Bounds shared by several modules
DEFAULT_MMAX = 10
MIN_CURVE_DEGREE = 1
MAX_CURVE_DEGREE = 3


class DomainError(ValueError):
    """Raised when an operation's preconditions or invariants are violated."""

    def __init__(
        self, code: str, message: str, context: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message)
        self.code = code
        self.message = message
        self.context = context or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert the error to the machine-readable error object."""
        return {"code": self.code, "message": self.message, "context": self.context}


class ValueObject(ABC):
    """Base class for all value objects in the domain."""

    @abstractmethod
    def validate(self) -> None:
        """Validate the value object's data."""

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self.__dict__ == other.__dict__


def as_rational(value: Any) -> Fraction:
    """
    Coerce an int, Fraction or "p/q" string into an exact rational.

    Floats are rejected: every value entering a computation must be exact.

    Raises:
        DomainError: If the value is a float or cannot be parsed
    """
    if isinstance(value, bool):
        raise DomainError("bad_rational", f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError("bad_rational", f"Not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """
    Parse "p/q" or "p" into a Fraction.

    Raises:
        DomainError: If the text is not an exact rational
    """
    cleaned = text.strip()
    if not cleaned or any(ch in cleaned for ch in ".eE"):
        raise DomainError(
            "bad_rational", f"Expected 'p/q' or an integer, got {text!r}"
        )
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(
            "bad_rational", f"Expected 'p/q' or an integer, got {text!r}"
        ) from e


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as "p/q" (or "p" for integers)."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
