# src/cli/arguments.py
from argparse import ArgumentTypeError
from fractions import Fraction

from src.models.base import DomainError, parse_rational
from src.models.cy_pairs import CurvePair
from src.models.lattice import LatticeVector
from src.models.toric import ToricValuation


def rational(text: str) -> Fraction:
    """argparse type for exact "p/q" values."""
    try:
        return parse_rational(text)
    except DomainError as e:
        raise ArgumentTypeError(e.message) from e


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise ArgumentTypeError(f"Expected an integer, got {text!r}") from e
    if value < 1:
        raise ArgumentTypeError(f"Expected a positive integer, got {text!r}")
    return value


def int_list(text: str) -> list[int]:
    """Comma-separated integers, e.g. "1,1,2"."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ArgumentTypeError(
            f"Expected comma-separated integers, got {text!r}"
        ) from e


def int_pair(text: str) -> tuple[int, int]:
    values = int_list(text)
    if len(values) != 2:  # noqa: PLR2004
        raise ArgumentTypeError(f"Expected two integers x,y, got {text!r}")
    return values[0], values[1]


def lattice_vector(text: str) -> LatticeVector:
    x, y = int_pair(text)
    return LatticeVector(x, y)


def valuation_list(text: str) -> list[ToricValuation]:
    """Weights "x,y;x,y" with exact rational coordinates."""
    weights = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split(",")
        if len(parts) != 2:  # noqa: PLR2004
            raise ArgumentTypeError(f"Expected x,y weights, got {chunk!r}")
        try:
            weights.append(ToricValuation((rational(parts[0]), rational(parts[1]))))
        except DomainError as e:
            raise ArgumentTypeError(e.message) from e
    return weights


def frac_spec(text: str) -> list[tuple[str, Fraction]]:
    """
    Fractional parts "label:a/b,..." or "a/b,...".

    Unlabelled entries are named p0, p1, ... by position.
    """
    fracs = []
    for index, chunk in enumerate(part for part in text.split(",") if part.strip()):
        label, _, value = chunk.rpartition(":")
        fracs.append((label.strip() or f"p{index}", rational(value)))
    return fracs


def boundary_spec(text: str) -> CurvePair:
    """Boundary "label:c,..." on P^1."""
    mapping: dict[str, Fraction] = {}
    for chunk in (part for part in text.split(",") if part.strip()):
        label, sep, value = chunk.partition(":")
        if not sep or not label.strip():
            raise ArgumentTypeError(f"Expected label:c, got {chunk!r}")
        mapping[label.strip()] = rational(value)
    try:
        return CurvePair.of(mapping)
    except DomainError as e:
        raise ArgumentTypeError(e.message) from e
