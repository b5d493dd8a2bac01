# src/models/markov.py
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .base import DomainError, ValueObject
from .toric import (
    ToricDivisor,
    ToricSurface,
    anticanonical_volume,
    gorenstein_index,
    wps,
)

logger = logging.getLogger(__name__)

MARKOV_ROOT = (1, 1, 1)
MARKOV_VOLUME = 9


class DegenerationKind:
    """Enumeration of special degeneration record kinds."""

    PLANE = "plane"
    WPS = "wps"
    HYPERSURFACE = "hypersurface"

    @classmethod
    def is_valid(cls, kind: str) -> bool:
        return kind in {cls.PLANE, cls.WPS, cls.HYPERSURFACE}


def is_markov(a: int, b: int, c: int) -> bool:
    return a * a + b * b + c * c == 3 * a * b * c


@dataclass(frozen=True, order=True)
class MarkovTriple(ValueObject):
    """Sorted positive solution of a^2 + b^2 + c^2 = 3abc."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if min(self.a, self.b, self.c) <= 0:
            raise DomainError("not_markov", "Markov numbers must be positive")
        if not self.a <= self.b <= self.c:
            raise DomainError(
                "not_markov", f"Triple {self.as_tuple()} must be sorted ascending"
            )
        if not is_markov(self.a, self.b, self.c):
            raise DomainError(
                "not_markov", f"{self.as_tuple()} does not satisfy a^2+b^2+c^2=3abc"
            )

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "MarkovTriple":
        x, y, z = sorted((a, b, c))
        return cls(x, y, z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def to_dict(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b, "c": self.c}


def mutate(triple: MarkovTriple, slot: int) -> MarkovTriple:
    """
    Vieta move: replace the entry at slot by 3 * (product of the others) - entry.

    Raises:
        DomainError: If slot is not 0, 1 or 2
    """
    if slot not in (0, 1, 2):
        raise DomainError("bad_slot", f"Slot must be 0, 1 or 2, got {slot}")
    entries = list(triple.as_tuple())
    others = [entries[k] for k in range(3) if k != slot]
    entries[slot] = 3 * others[0] * others[1] - entries[slot]
    return MarkovTriple.of(*entries)


def enumerate_triples(bound: int) -> list[MarkovTriple]:
    """All Markov triples with largest entry <= bound, lexicographically sorted."""
    if bound < 1:
        return []
    root = MarkovTriple(*MARKOV_ROOT)
    seen = {root}
    queue = deque([root])
    while queue:
        current = queue.popleft()
        for slot in range(3):
            child = mutate(current, slot)
            if child.c <= bound and child not in seen:
                seen.add(child)
                queue.append(child)
    logger.debug("Enumerated %d Markov triples up to %d", len(seen), bound)
    return sorted(seen)


def dn_sequence(n: int) -> list[int]:
    """[d_0, ..., d_n] with d_0 = d_1 = 1 and d_{k+1} = 3 d_k - d_{k-1}."""
    if n < 0:
        raise DomainError("bad_index", f"n must be non-negative, got {n}")
    seq = [1, 1]
    while len(seq) <= n:
        seq.append(3 * seq[-1] - seq[-2])
    return seq[: n + 1]


@dataclass(frozen=True)
class DegenerationRecord(ValueObject):
    """
    One special degeneration of P^2.

    Hypersurface records are symbolic: weights of the ambient weighted
    projective space and the exponent vectors of the equation's monomials.
    """

    kind: str
    weights: tuple[int, ...]
    provenance: str
    equation_exponents: tuple[tuple[int, ...], ...] | None = None
    n: int | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not DegenerationKind.is_valid(self.kind):
            raise DomainError("bad_record", f"Invalid degeneration kind: {self.kind}")
        if self.kind == DegenerationKind.HYPERSURFACE:
            if not self.equation_exponents:
                raise DomainError("bad_record", "Hypersurface records need an equation")
            if len(set(self.weighted_degrees())) != 1:
                raise DomainError(
                    "not_quasi_homogeneous",
                    f"Equation is not quasi-homogeneous for weights {self.weights}",
                    {"degrees": self.weighted_degrees()},
                )

    def weighted_degrees(self) -> list[int]:
        return [
            sum(w * e for w, e in zip(self.weights, exps, strict=True))
            for exps in self.equation_exponents or ()
        ]

    @property
    def is_quasi_homogeneous(self) -> bool:
        return len(set(self.weighted_degrees())) <= 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "weights": list(self.weights),
            "equation_exponents": (
                [list(e) for e in self.equation_exponents]
                if self.equation_exponents
                else None
            ),
            "provenance": self.provenance,
            "n": self.n,
        }


def _hypersurface_record(n: int, d: list[int]) -> DegenerationRecord:
    # {x0 x3 = x1^{d_{n+1}} + x2^{d_{n-1}}} in P(1, d_{n-1}, d_{n+1}, d_n^2)
    return DegenerationRecord(
        kind=DegenerationKind.HYPERSURFACE,
        weights=(1, d[n - 1], d[n + 1], d[n] ** 2),
        equation_exponents=(
            (1, 0, 0, 1),
            (0, d[n + 1], 0, 0),
            (0, 0, d[n - 1], 0),
        ),
        provenance="x0*x3 = x1^d_{n+1} + x2^d_{n-1} in P(1,d_{n-1},d_{n+1},d_n^2)",
        n=n,
    )


def special_degenerations(bound: int) -> list[DegenerationRecord]:
    """
    Catalog of special degenerations of P^2 with d_{n+1} <= bound.

    P^2 and P(1,1,4) (the n = 1 member of P(1, d_n^2, d_{n+1}^2)) are always
    listed; the n = 1 hypersurface is P^2 again and is skipped.
    """
    records = [
        DegenerationRecord(
            kind=DegenerationKind.PLANE, weights=(1, 1, 1), provenance="P^2"
        ),
        DegenerationRecord(
            kind=DegenerationKind.WPS,
            weights=(1, 1, 4),
            provenance="P(1,d_n^2,d_{n+1}^2)",
            n=1,
        ),
    ]
    n = 2
    d = dn_sequence(n + 1)
    while d[n + 1] <= bound:
        records.append(
            DegenerationRecord(
                kind=DegenerationKind.WPS,
                weights=(1, d[n] ** 2, d[n + 1] ** 2),
                provenance="P(1,d_n^2,d_{n+1}^2)",
                n=n,
            )
        )
        records.append(_hypersurface_record(n, d))
        n += 1
        d = dn_sequence(n + 1)
    return records


@dataclass(frozen=True)
class MarkovSurfaceReport:
    """P(a^2, b^2, c^2) with its anticanonical volume and Cartier index."""

    triple: MarkovTriple
    surface: ToricSurface
    volume: Fraction
    index: int
    checks: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.triple.to_dict(),
            "weights": [self.triple.a**2, self.triple.b**2, self.triple.c**2],
            "rays": [v.to_list() for v in self.surface.rays],
            "volume": self.volume,
            "index": self.index,
            "volume_is_9": self.checks.get("volume_is_9", False),
            "index_is_abc": self.checks.get("index_is_abc", False),
        }


def markov_surface(triple: MarkovTriple) -> MarkovSurfaceReport:
    """Build P(a^2, b^2, c^2) and check volume 9 and Cartier index abc."""
    a, b, c = triple.as_tuple()
    surface = wps(a * a, b * b, c * c)
    volume = anticanonical_volume(surface, ToricDivisor.zero(surface))
    index = gorenstein_index(surface)
    checks = {
        "volume_is_9": volume == MARKOV_VOLUME,
        "index_is_abc": index == a * b * c,
    }
    if not all(checks.values()):
        logger.warning("Markov surface %s failed checks %s", surface.name, checks)
    return MarkovSurfaceReport(triple, surface, volume, index, checks)

