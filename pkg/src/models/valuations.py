# src/models/valuations.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any

from .base import DomainError, ValueObject, as_rational
from .lattice import dot, linear_integral, polygon_area
from .toric import (
    ToricDivisor,
    ToricSurface,
    ToricValuation,
    anticanonical_polytope,
    wps,
)

logger = logging.getLogger(__name__)

# (-K_{P^2})^2
P2_VOLUME = Fraction(9)
# v_t is toric from this weight on
CONIC_LINE_BREAK = Fraction(1, 2)


class Frame:
    """Coordinate frames in which a monomial weight is read."""

    STANDARD_TORIC = "standard_toric"
    CONIC_LINE = "conic_line"

    @classmethod
    def is_valid(cls, frame: str) -> bool:
        return frame in {cls.STANDARD_TORIC, cls.CONIC_LINE}


class Route:
    """How an SReport's S value was obtained."""

    TORIC_INTEGRAL = "toric_integral"
    THRESHOLD_FORMULA = "threshold_formula"
    VOLUME_INTEGRAL = "volume_integral"
    PIECEWISE = "piecewise"


@dataclass(frozen=True)
class MonomialWeight(ValueObject):
    """Monomial valuation at a point with weights (a, b) in a coordinate frame."""

    a: Fraction
    b: Fraction
    frame: str = Frame.STANDARD_TORIC

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.a <= 0 or self.b <= 0:
            raise DomainError("bad_weight", "Monomial weights must be positive")
        if not Frame.is_valid(self.frame):
            raise DomainError("bad_weight", f"Unknown frame: {self.frame}")

    @property
    def t(self) -> Fraction:
        """Slope of the normalized weight (1, t)."""
        return self.b / self.a


@dataclass(frozen=True)
class CurveThroughCenter(ValueObject):
    """A plane curve through the blowup center with its order along E."""

    name: str
    plane_degree: int
    ord_e: Fraction

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.plane_degree < 1:
            raise DomainError("bad_curve", "Plane degree must be positive")
        if self.ord_e <= 0:
            raise DomainError("bad_curve", "Curves through the center have ord_E > 0")


@dataclass(frozen=True)
class WeightedBlowupData(ValueObject):
    """(a, b)-weighted blowup of a smooth surface point and curves through it."""

    a: int
    b: int
    curves: tuple[CurveThroughCenter, ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.a < 1 or self.b < 1 or gcd(self.a, self.b) != 1:
            raise DomainError(
                "bad_weights",
                f"Blowup weights must be coprime and positive: ({self.a}, {self.b})",
            )
        for curve in self.curves:
            if curve.ord_e < min(self.a, self.b):
                raise DomainError(
                    "bad_curve",
                    f"Curve {curve.name} has ord_E {curve.ord_e} < min(a, b)",
                )


@dataclass(frozen=True)
class SReport:
    """S-invariant of a valuation together with the intermediate values."""

    valuation: str
    S: Fraction
    route: str
    T: Fraction | None = None
    intermediates: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "valuation": self.valuation,
            "S": self.S,
            "T": self.T,
            "route": self.route,
            "intermediates": dict(self.intermediates),
        }


def _check_toric_boundary(surface: ToricSurface, boundary: ToricDivisor) -> None:
    boundary.check_against(surface)
    if any(c >= 1 for c in boundary.coefficients):
        raise DomainError("not_log_fano", "pair not log Fano: coefficients must be < 1")


def s_toric_report(
    surface: ToricSurface, boundary: ToricDivisor, w: ToricValuation
) -> SReport:
    """
    S-invariant of a toric valuation: the average of <w, u - u0> over the
    polytope of -K - Delta, where u0 is the vertex minimizing <w, .>.

    Raises:
        DomainError: If the polytope is empty or degenerate
    """
    _check_toric_boundary(surface, boundary)
    polytope = anticanonical_polytope(surface, boundary)
    area = polygon_area(polytope)
    if area == 0:
        raise DomainError("not_log_fano", "pair not log Fano")
    # vertices are lexicographically ordered, so min() breaks ties lexicographically
    u0 = min(polytope.vertices, key=lambda v: (dot(w.vector, v), v))
    shifted = polytope.translate((-u0[0], -u0[1]))
    s_value = linear_integral(shifted, w.vector) / area
    t_value = max(dot(w.vector, v) for v in shifted.vertices)
    logger.debug("S(%s) = %s on %s", w.to_list(), s_value, surface.name)
    return SReport(
        valuation=f"toric {w.to_list()}",
        S=s_value,
        T=t_value,
        route=Route.TORIC_INTEGRAL,
        intermediates={
            "volume": 2 * area,
            "u0": [u0[0], u0[1]],
            "surface": surface.name,
        },
    )


def s_toric(
    surface: ToricSurface, boundary: ToricDivisor, w: ToricValuation
) -> Fraction:
    return s_toric_report(surface, boundary, w).S


def weighted_blowup_basics(a: int, b: int) -> dict[str, Fraction]:
    """E^2 = -1/(ab) and A(E) = a + b for the (a, b)-weighted blowup."""
    WeightedBlowupData(a, b)
    return {"E_sq": Fraction(-1, a * b), "A": Fraction(a + b)}


def monomial_order(a: int, b: int, i: int, j: int) -> int:
    """ord_E of x^i y^j for the (a, b)-weighted blowup."""
    return a * i + b * j


def conic_line_x_order(t: Fraction) -> Fraction:
    """v_t(x) where x = x' + y^2, v_t(x') = 1 and v_t(y) = t."""
    return min(Fraction(1), 2 * t)


def strict_transform_sq(
    c_sq: Fraction | int, ord_e: Fraction | int, a: int, b: int
) -> Fraction:
    """(mu^* C - ord E)^2 = C^2 - ord^2 / (ab)."""
    return Fraction(c_sq) - Fraction(ord_e) ** 2 / (a * b)


def threshold_from_extremal(
    lambda_coeff: Fraction | int,
    ord_e: Fraction | int,
    *,
    strict_sq: Fraction | int | None,
) -> Fraction:
    """
    T = lambda * ord_E(C) for a curve with -K ~ lambda * C whose strict
    transform spans a boundary ray of the Mori cone (strict_sq == 0).

    Raises:
        DomainError: If the extremality certificate is absent
    """
    if strict_sq is None or Fraction(strict_sq) != 0:
        raise DomainError(
            "no_certificate",
            "threshold formula requires boundary class",
            {"strict_sq": None if strict_sq is None else str(Fraction(strict_sq))},
        )
    return Fraction(lambda_coeff) * Fraction(ord_e)


def s_from_threshold(t_value: Fraction | int) -> Fraction:
    """S = T/3 + 12/T."""
    t = Fraction(t_value)
    if t <= 0:
        raise DomainError("bad_threshold", "Threshold must be positive")
    return t / 3 + 12 / t


def single_chamber_s(t_value: Fraction, a: int, b: int) -> Fraction:
    """(1/9) * integral_0^T (9 - s^2/(ab)) ds, valid while -K - sE stays nef."""
    return (9 * t_value - t_value**3 / (3 * a * b)) / P2_VOLUME


def s_conic_line(t: Fraction | int) -> Fraction:
    """
    S(v_t) for the monomial valuation of weights (1, t) in the frame of a
    conic and a transversal line.

    Raises:
        DomainError: If t < 0
    """
    t = Fraction(t)
    if t < 0:
        raise DomainError("bad_parameter", f"t must be >= 0, got {t}")
    if t <= CONIC_LINE_BREAK:
        return Fraction(1, 2) + 2 * t
    return 1 + t


def s_of_plane_curve(e: int) -> Fraction:
    """
    S(ord_C) for a plane curve of degree e in {1, 2, 3}.

    vol(-K - sC) = (3 - es)^2 on [0, 3/e], integrated exactly.

    Raises:
        DomainError: If e is not 1, 2 or 3
    """
    if e not in (1, 2, 3):
        raise DomainError(
            "not_plurianticanonical",
            "not a plurianticanonical curve class",
            {"e": e},
        )
    x = Fraction(3, e)
    # antiderivative of (3 - e s)^2 = 9 - 6 e s + e^2 s^2
    integral = 9 * x - 3 * e * x**2 + Fraction(e * e, 3) * x**3
    return integral / P2_VOLUME


def s_pipeline(data: WeightedBlowupData) -> SReport:
    """
    S-invariant of the weighted-blowup divisor E over a point of P^2.

    The first curve whose strict transform has square 0 certifies the
    threshold. The value T/3 + 12/T is used when it agrees with the direct
    volume integral over the nef chamber; otherwise the integral is reported.

    Raises:
        DomainError: If no curve provides the extremality certificate
    """
    basics = weighted_blowup_basics(data.a, data.b)
    squares = {
        c.name: strict_transform_sq(c.plane_degree**2, c.ord_e, data.a, data.b)
        for c in data.curves
    }
    certificate = next((c for c in data.curves if squares[c.name] == 0), None)
    t_value = threshold_from_extremal(
        Fraction(3, certificate.plane_degree) if certificate else 0,
        certificate.ord_e if certificate else 0,
        strict_sq=squares[certificate.name] if certificate else None,
    )
    formula = s_from_threshold(t_value)
    chamber = single_chamber_s(t_value, data.a, data.b)
    if formula == chamber:
        s_value, route = formula, Route.THRESHOLD_FORMULA
    else:
        logger.warning(
            "Threshold formula gives %s but the nef-chamber integral gives %s; "
            "reporting the integral",
            formula,
            chamber,
        )
        s_value, route = chamber, Route.VOLUME_INTEGRAL

    normalized = MonomialWeight(Fraction(data.a), Fraction(data.b), Frame.CONIC_LINE)
    return SReport(
        valuation=f"ord_E ({data.a},{data.b})-weighted blowup",
        S=s_value,
        T=t_value,
        route=route,
        intermediates={
            "E_sq": basics["E_sq"],
            "A": basics["A"],
            "strict_transform_sq": squares,
            "certificate": certificate.name if certificate else None,
            "S_threshold_formula": formula,
            "S_volume_integral": chamber,
            "t": normalized.t,
            "S_normalized": s_value / data.a,
        },
    )


def s_of_monomial_weight(weight: MonomialWeight) -> SReport:
    """
    S-invariant on P^2 of the monomial valuation weight.a * v_{b/a}.

    Standard-toric weights are integrated on the polytope; conic-line
    weights use the piecewise closed form (S is homogeneous of degree 1).
    """
    if weight.frame == Frame.STANDARD_TORIC:
        plane = wps(1, 1, 1, name="P^2")
        return s_toric_report(
            plane, ToricDivisor.zero(plane), ToricValuation((weight.a, weight.b))
        )
    s_value = weight.a * s_conic_line(weight.t)
    return SReport(
        valuation=f"conic-line ({weight.a},{weight.b})",
        S=s_value,
        route=Route.PIECEWISE,
        intermediates={"t": weight.t, "x_order": conic_line_x_order(weight.t)},
    )


def parse_curve(text: str) -> CurveThroughCenter:
    """Parse "name:degree:ord" into a curve through the blowup center."""
    parts = text.split(":")
    if len(parts) != 3:  # noqa: PLR2004
        raise DomainError("bad_curve", f"Expected name:degree:ord, got {text!r}")
    return CurveThroughCenter(parts[0], int(parts[1]), as_rational(parts[2]))
