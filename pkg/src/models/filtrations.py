# src/models/filtrations.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Any

from .base import MAX_CURVE_DEGREE, MIN_CURVE_DEGREE, DomainError, ValueObject
from .lattice import dot, lattice_points
from .toric import (
    ToricDivisor,
    ToricSurface,
    ToricValuation,
    anticanonical_polytope,
    is_ample,
)

logger = logging.getLogger(__name__)

# grade m -> [(exponent vector, top filtration level)]
MonomialModel = dict[int, list[tuple[tuple[int, ...], int]]]


@dataclass(frozen=True)
class FiltrationTable(ValueObject):
    """
    Bigraded table (m, lambda) -> dim F^lambda R_m for 1 <= m <= m_max.

    Each grade stores the levels from its lowest jump up to the first level
    where the filtration vanishes. Below the stored range the filtration is
    the whole ambient space; above it the filtration is zero.
    """

    entries: dict[tuple[int, int], int]
    ambient: dict[int, int]
    m_max: int
    r_scale: Fraction = Fraction(1)
    description: str = ""
    model: MonomialModel | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        for m in range(1, self.m_max + 1):
            levels = self.levels(m)
            if not levels:
                raise DomainError("bad_filtration", f"Grade {m} has no entries")
            dims = [self.entries[(m, lam)] for lam in levels]
            if dims[0] != self.ambient[m]:
                raise DomainError(
                    "bad_filtration",
                    f"Grade {m} must start from the full space of dimension "
                    f"{self.ambient[m]}",
                )
            if dims[-1] != 0:
                raise DomainError("bad_filtration", f"Grade {m} does not vanish")
            if any(a < b for a, b in zip(dims, dims[1:], strict=False)):
                raise DomainError(
                    "bad_filtration",
                    f"Dimensions at grade {m} must weakly decrease in lambda",
                    {"dims": dims},
                )

    def levels(self, m: int) -> list[int]:
        return sorted(lam for (k, lam) in self.entries if k == m)

    def dim(self, m: int, lam: int) -> int:
        if (m, lam) in self.entries:
            return self.entries[(m, lam)]
        levels = self.levels(m)
        if levels and lam < levels[0]:
            return self.ambient[m]
        return 0

    def gr(self, m: int, lam: int) -> int:
        return self.dim(m, lam) - self.dim(m, lam + 1)

    def rows(self) -> list[dict[str, int]]:
        """CSV rows (m, lambda, dim, gr_dim), the vanishing level excluded."""
        return [
            {"m": m, "lambda": lam, "dim": self.dim(m, lam), "gr_dim": self.gr(m, lam)}
            for m in range(1, self.m_max + 1)
            for lam in self.levels(m)[:-1]
        ]

    def to_dict(self) -> dict[str, Any]:
        return {
            "description": self.description,
            "r_scale": self.r_scale,
            "m_max": self.m_max,
            "ambient": {str(m): d for m, d in sorted(self.ambient.items())},
            "rows": self.rows(),
        }


def _h0_p2(k: int) -> int:
    return (k + 1) * (k + 2) // 2 if k >= 0 else 0


def _curve_model(e: int, m_max: int) -> MonomialModel | None:
    """
    Monomial model of gr R for the degeneration to the normal cone of a
    rational plane curve: the cone over P^1 polarized by O(e^2).
    """
    if e == MAX_CURVE_DEGREE:
        return None
    d = e * e
    model: MonomialModel = {}
    for m in range(1, m_max + 1):
        basis = []
        for lam in range(m + 1):
            k = m - lam
            basis.extend(((a, d * k - a), lam) for a in range(d * k + 1))
        model[m] = basis
    return model


def filtration_by_plane_curve(e: int, m_max: int) -> FiltrationTable:
    """
    Filtration of R_m = H^0(P^2, O(em)) by order of vanishing along a curve
    of degree e: dim F^lambda R_m = h^0(O(e(m - lambda))) for 0 <= lambda <= m.

    Raises:
        DomainError: If e is not 1, 2 or 3, or m_max < 1
    """
    if not MIN_CURVE_DEGREE <= e <= MAX_CURVE_DEGREE:
        raise DomainError(
            "not_plurianticanonical", "not a plurianticanonical curve class", {"e": e}
        )
    if m_max < 1:
        raise DomainError("bad_bound", f"m_max must be positive, got {m_max}")
    entries: dict[tuple[int, int], int] = {}
    ambient: dict[int, int] = {}
    for m in range(1, m_max + 1):
        ambient[m] = _h0_p2(e * m)
        for lam in range(m + 2):
            entries[(m, lam)] = _h0_p2(e * (m - lam))
    logger.debug("Tabulated plane-curve filtration e=%d up to m=%d", e, m_max)
    return FiltrationTable(
        entries=entries,
        ambient=ambient,
        m_max=m_max,
        r_scale=Fraction(3, e),
        description=f"ord_C on H^0(P^2, O({e}m)), deg C = {e}",
        model=_curve_model(e, m_max),
    )


def monomial_lc_filtration(
    surface: ToricSurface,
    boundary: ToricDivisor,
    weights: Sequence[ToricValuation],
    r: int | Fraction,
    m_max: int,
) -> FiltrationTable:
    """
    Filtration of H^0(m L), L = -r(K + Delta), cut out by toric valuations:
    u lies in F^lambda iff <w_i, u - u0(w_i)> >= lambda + m r A(w_i) for all i.

    Since u0(w_i) minimizes <w_i, .> on m P_L at value -m r A(w_i), the
    condition reads <w_i, u> >= lambda, and the top level of a monomial is
    the floor of its least pairing.

    Raises:
        DomainError: If L is not ample or r, m_max are not positive
    """
    r = Fraction(r)
    if r <= 0 or m_max < 1:
        raise DomainError("bad_bound", "r and m_max must be positive")
    boundary.check_against(surface)
    if any(c >= 1 for c in boundary.coefficients) or not is_ample(
        surface, ToricDivisor(tuple(1 - c for c in boundary.coefficients))
    ):
        raise DomainError(
            "not_ample",
            "L = -r(K + Delta) is not ample",
            {"boundary": boundary.to_list()},
        )
    polytope = anticanonical_polytope(surface, boundary).dilate(r)

    entries: dict[tuple[int, int], int] = {}
    ambient: dict[int, int] = {}
    model: MonomialModel = {}
    for m in range(1, m_max + 1):
        points = lattice_points(polytope, m)
        tops = [
            min((floor(dot(w.vector, u)) for w in weights), default=0) for u in points
        ]
        ambient[m] = len(points)
        model[m] = list(zip(points, tops, strict=True))
        low, high = min(tops), max(tops)
        for lam in range(low, high + 2):
            entries[(m, lam)] = sum(1 for t in tops if t >= lam)
    logger.debug(
        "Monomial filtration on %s with %d weights", surface.name, len(weights)
    )
    return FiltrationTable(
        entries=entries,
        ambient=ambient,
        m_max=m_max,
        r_scale=r,
        description=(
            f"monomial filtration on {surface.name or 'toric surface'} by "
            f"{[w.to_list() for w in weights]}"
        ),
        model=model,
    )


def central_fiber_hilbert(table: FiltrationTable) -> dict[int, int]:
    """m -> sum over lambda of gr dimensions: the central fiber's Hilbert function."""
    return {
        m: sum(table.gr(m, lam) for lam in table.levels(m))
        for m in range(1, table.m_max + 1)
    }


def is_flat(table: FiltrationTable) -> bool:
    hilb = central_fiber_hilbert(table)
    return all(hilb[m] == table.ambient[m] for m in hilb)


def _generated_tops(
    model: MonomialModel, m0: int, m_max: int
) -> dict[int, dict[tuple[int, ...], int]]:
    """Best level reachable by products of generators of grade <= m0."""
    reach: dict[int, dict[tuple[int, ...], int]] = {}
    for m in range(1, m_max + 1):
        if m <= m0:
            reach[m] = dict(model[m])
            continue
        best: dict[tuple[int, ...], int] = {}
        for j in range(1, m0 + 1):
            for v1, t1 in model[j]:
                for v2, t2 in reach[m - j].items():
                    v = tuple(a + b for a, b in zip(v1, v2, strict=True))
                    if best.get(v, t1 + t2 - 1) < t1 + t2:
                        best[v] = t1 + t2
        reach[m] = best
    return reach


def finite_generation_degree(table: FiltrationTable) -> int | None:
    """
    Smallest m0 < m_max such that products of elements of grade <= m0 span
    every tabulated F^lambda R_m, checked on the monomial model.
    m0 = m_max is never tried: no grade above it is tabulated, so it would
    pass vacuously.

    Returns None (not detected) when the table has no monomial model or no
    such m0 exists in range.
    """
    if table.model is None:
        logger.warning(
            "No monomial model for %r; generation not detected", table.description
        )
        return None
    for m0 in range(1, table.m_max):
        reach = _generated_tops(table.model, m0, table.m_max)
        if all(
            sum(1 for t in reach[m].values() if t >= lam) == table.dim(m, lam)
            for m in range(m0 + 1, table.m_max + 1)
            for lam in table.levels(m)
        ) and all(len(reach[m]) == table.ambient[m] for m in reach):
            logger.debug("Rees algebra generated in degree %d", m0)
            return m0
    return None
