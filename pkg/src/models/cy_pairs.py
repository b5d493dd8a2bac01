# src/models/cy_pairs.py
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import floor, gcd, isqrt, lcm
from typing import Any

from .base import DEFAULT_MMAX, DomainError, ValueObject
from .lattice import LatticeVector, primitive
from .markov import enumerate_triples, is_markov, markov_surface
from .toric import (
    ToricDivisor,
    ToricSurface,
    ToricValuation,
    angle_sorted,
    anticanonical_volume,
    hilbert_series,
    is_isomorphic,
    log_discrepancy,
    self_intersection,
    star_subdivide,
    wps,
    wps_weights,
)

logger = logging.getLogger(__name__)

# deg L of the elliptic cone
ELLIPTIC_CONE_DEGREE = Fraction(9)
# (-K)^2 of P^2 and of all its Q-Gorenstein degenerations
PLANE_VOLUME = Fraction(9)
# orbifold points of (P^1, L_orb) with deg L_orb < 2 number at most three
MAX_ORBIFOLD_POINTS = 3
# a toric cone over P^1 has at most two torus-fixed points
MAX_TORIC_POINTS = 2
SURFACE_TYPES = {-1: "Type I", 0: "Type II", 1: "Type III"}


class GitState:
    STABLE = "stable"
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"


class TypeIICase:
    """Cases of Type II polystable pairs."""

    ELLIPTIC_CONE = "elliptic_cone"
    ORBIFOLD_CONE = "orbifold_cone"
    TORIC_MANETTI = "toric_manetti"
    GLUED_CONES = "glued_cones"

    @classmethod
    def is_valid(cls, case: str) -> bool:
        return case in {
            cls.ELLIPTIC_CONE,
            cls.ORBIFOLD_CONE,
            cls.TORIC_MANETTI,
            cls.GLUED_CONES,
        }


@dataclass(frozen=True)
class CurvePair(ValueObject):
    """Q-divisor on P^1 supported at labelled points."""

    points: tuple[str, ...] = ()
    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if len(self.points) != len(self.coefficients):
            raise DomainError("bad_boundary", "Need one coefficient per point")
        if len(set(self.points)) != len(self.points):
            raise DomainError("bad_boundary", "Point labels must be distinct")
        for label, c in zip(self.points, self.coefficients, strict=True):
            if not 0 < c <= 1:
                raise DomainError(
                    "bad_boundary",
                    f"Coefficient at {label} must lie in (0, 1], got {c}",
                )

    @classmethod
    def of(cls, mapping: dict[str, Fraction]) -> "CurvePair":
        items = sorted(mapping.items())
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    def coefficient(self, label: str) -> Fraction:
        if label in self.points:
            return self.coefficients[self.points.index(label)]
        return Fraction(0)

    @property
    def degree(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))

    @property
    def is_cy(self) -> bool:
        """K_{P^1} + D ~ 0."""
        return self.degree == 2  # noqa: PLR2004

    @property
    def is_lc(self) -> bool:
        return all(c <= 1 for c in self.coefficients)

    @property
    def is_klt(self) -> bool:
        return all(c < 1 for c in self.coefficients)

    def to_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.points, self.coefficients, strict=True))


@dataclass(frozen=True)
class OrbifoldPolarization(ValueObject):
    """Q-divisor L on P^1 given by its degree and fractional parts a_i/b_i."""

    degree: Fraction
    frac_parts: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.degree <= 0:
            raise DomainError("bad_polarization", "deg L must be positive")
        labels = [label for label, _ in self.frac_parts]
        if len(set(labels)) != len(labels):
            raise DomainError("bad_polarization", "Point labels must be distinct")
        for label, f in self.frac_parts:
            if not 0 < f < 1:
                raise DomainError(
                    "bad_polarization",
                    f"Fractional part at {label} must lie in (0, 1), got {f}",
                )
        if self.integral_part.denominator != 1:
            raise DomainError(
                "bad_polarization",
                f"deg L minus fractional parts is not integral: {self.integral_part}",
            )

    @property
    def integral_part(self) -> Fraction:
        return self.degree - sum((f for _, f in self.frac_parts), Fraction(0))

    def floor_degree(self, k: int) -> int:
        """deg of the round-down of kL."""
        fractional = sum(floor(k * f) for _, f in self.frac_parts)
        return int(k * self.integral_part) + fractional

    def to_dict(self) -> dict[str, Any]:
        return {"degree": self.degree, "frac_parts": dict(self.frac_parts)}


@dataclass(frozen=True)
class ConeReport:
    """Invariants of the orbifold cone C_p(P^1, L) with boundary D at infinity."""

    degree: Fraction
    r: Fraction
    volume_antiK: Fraction
    volume_antiK_minus_inf: Fraction
    lc: bool
    klt: bool
    is_cy: bool = False
    identified_as: str | None = None
    orbifold_divisor: CurvePair = field(default_factory=CurvePair)
    different_at_infinity: CurvePair = field(default_factory=CurvePair)
    p2_degeneration: bool = False

    def __post_init__(self) -> None:
        if self.volume_antiK != (1 + self.r) ** 2 * self.degree:
            raise DomainError("bad_report", "(-K)^2 must equal (1+r)^2 deg L")
        if self.volume_antiK_minus_inf != self.r**2 * self.degree:
            raise DomainError("bad_report", "(-K-X_inf)^2 must equal r^2 deg L")
        if self.klt and not self.lc:
            raise DomainError("bad_report", "klt pairs are lc")

    @property
    def zero_section_discrepancy(self) -> Fraction:
        """A_{C_p, X_inf}(X_0) = r."""
        return self.r

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "r": self.r,
            "volume_antiK": self.volume_antiK,
            "volume_antiK_minus_inf": self.volume_antiK_minus_inf,
            "lc": self.lc,
            "klt": self.klt,
            "is_cy": self.is_cy,
            "identified_as": self.identified_as,
            "zero_section_discrepancy": self.zero_section_discrepancy,
            "orbifold_divisor": self.orbifold_divisor.to_dict(),
            "different_at_infinity": self.different_at_infinity.to_dict(),
            "p2_degeneration": self.p2_degeneration,
        }


@dataclass(frozen=True)
class TypeIIRecord(ValueObject):
    """One Type II polystable pair, checked against its defining equation."""

    case: str
    payload: dict[str, Any]

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not TypeIICase.is_valid(self.case):
            raise DomainError("bad_record", f"Unknown Type II case: {self.case}")
        p = self.payload
        if self.case == TypeIICase.ELLIPTIC_CONE:
            holds = p["deg_L"] == ELLIPTIC_CONE_DEGREE
        elif self.case == TypeIICase.ORBIFOLD_CONE:
            r, s = p["r"], p["s"]
            holds = 9 * r == (1 + r) ** 2 * (2 - s) and p["deg_L"] * r == 2 - s
        elif self.case == TypeIICase.TORIC_MANETTI:
            holds = p["A"] * p["deg_L"] == 2 - p["deg_delta"]
        else:
            holds = 1 / p["t1"] + 1 / p["t2"] == 9 / (2 - p["sigma"]) ** 2
        if not holds:
            raise DomainError(
                "bad_record",
                f"Payload violates the {self.case} constraint",
                {k: str(v) for k, v in p.items()},
            )

    def to_dict(self) -> dict[str, Any]:
        return {"case": self.case, **self.payload}


@dataclass(frozen=True)
class TypeIIIRecord:
    """(P^2, (3/d) {(xyz)^{d/3} = 0}) with its marking and Q-divisor reduction."""

    d: int
    exponent: int
    marking: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "surface": "P^2",
            "divisor": f"(xyz)^{self.exponent}",
            "marking": self.marking,
            "q_divisor": {"components": ["x", "y", "z"], "coefficient": Fraction(1)},
        }


def orb_divisor(polarization: OrbifoldPolarization) -> CurvePair:
    """L_orb = sum (b_i - 1)/b_i p_i over the points with a fractional part."""
    return CurvePair.of(
        {
            label: Fraction(f.denominator - 1, f.denominator)
            for label, f in polarization.frac_parts
        }
    )


def cone_hilbert(polarization: OrbifoldPolarization, m: int) -> int:
    """h^0(C_p, m X_inf) = sum over k <= m of h^0(P^1, floor(kL))."""
    return sum(max(polarization.floor_degree(k) + 1, 0) for k in range(m + 1))


def _ray_from_slope(slope: Fraction, sign: int) -> LatticeVector:
    return LatticeVector(sign * slope.denominator, slope.numerator)


def cone_fan(polarization: OrbifoldPolarization) -> ToricSurface | None:
    """
    Fan of C_p(P^1, L) when L has at most two fractional points.

    The section polytope of X_inf is conv{(0,0), (alpha, 1), (-beta, 1)} with
    alpha + beta = deg L; the integral part sits at the first point.
    """
    fracs = sorted(polarization.frac_parts)
    if len(fracs) > MAX_TORIC_POINTS:
        return None
    alpha = polarization.integral_part + (fracs[0][1] if fracs else 0)
    beta = fracs[1][1] if len(fracs) > 1 else Fraction(0)
    rays = [
        LatticeVector(0, -1),
        _ray_from_slope(beta, 1),
        _ray_from_slope(alpha, -1),
    ]
    return ToricSurface(rays=tuple(angle_sorted(rays)), name="C_p(P^1, L)")


def _markov_square_weights(weights: Sequence[int]) -> bool:
    roots = [isqrt(w) for w in weights]
    return all(r * r == w for r, w in zip(roots, weights, strict=True)) and is_markov(
        *roots
    )


def identify_cone(
    polarization: OrbifoldPolarization, m_max: int = DEFAULT_MMAX
) -> tuple[str | None, tuple[int, ...] | None]:
    """
    Match the cone with a weighted projective plane by Hilbert function and
    fan isomorphism. A match is a reported identification, not a proof.
    """
    fan = cone_fan(polarization)
    if fan is None:
        return None, None
    at_infinity = ToricDivisor(
        tuple(Fraction(int(v == LatticeVector(0, -1))) for v in fan.rays)
    )
    expected = [cone_hilbert(polarization, m) for m in range(m_max + 1)]
    if hilbert_series(fan, at_infinity, m_max) != expected:
        logger.warning("Cone fan Hilbert function disagrees with the section ring")
        return None, None
    weights = tuple(sorted(wps_weights(fan)))
    if any(gcd(a, b) != 1 for a, b in combinations(weights, 2)):
        return None, weights
    candidate = wps(*weights)
    if not is_isomorphic(fan, candidate):
        return None, weights
    name = "P^2" if weights == (1, 1, 1) else candidate.name
    return name, weights


def cone_over_p1(polarization: OrbifoldPolarization, boundary: CurvePair) -> ConeReport:
    """
    Orbifold cone over (P^1, L) with boundary D >= L_orb at infinity.

    The pair is Calabi-Yau only when deg D = 2; `is_cy` reports it.

    Raises:
        DomainError: If r <= 0 or D does not dominate L_orb
    """
    l_orb = orb_divisor(polarization)
    r = (2 - l_orb.degree) / polarization.degree
    if r <= 0:
        raise DomainError(
            "not_log_fano", "not log Fano: -(K + L_orb) is not positive", {"r": str(r)}
        )
    for label, c in zip(l_orb.points, l_orb.coefficients, strict=True):
        if boundary.coefficient(label) < c:
            raise DomainError(
                "boundary_below_orbifold",
                f"D must dominate L_orb: coefficient at {label} is below {c}",
                {"point": label},
            )
    volume = (1 + r) ** 2 * polarization.degree
    name, weights = identify_cone(polarization)
    p2_degeneration = (
        volume == PLANE_VOLUME
        and name is not None
        and weights is not None
        and _markov_square_weights(weights)
    )
    fan = cone_fan(polarization)
    if fan is not None and anticanonical_volume(fan, ToricDivisor.zero(fan)) != volume:
        logger.warning("Toric volume of the cone fan differs from (1+r)^2 deg L")
    logger.debug("Cone over P^1: r=%s, volume=%s, identified as %s", r, volume, name)
    return ConeReport(
        degree=polarization.degree,
        r=r,
        volume_antiK=volume,
        volume_antiK_minus_inf=r**2 * polarization.degree,
        lc=boundary.is_lc,
        klt=boundary.is_klt and l_orb.is_klt,
        is_cy=boundary.is_cy,
        identified_as=name,
        orbifold_divisor=l_orb,
        different_at_infinity=boundary,
        p2_degeneration=p2_degeneration,
    )


def index_nd(d: int) -> int:
    """N_d with N_d (K + (3/d) C) ~ 0 for a plane curve C of degree d."""
    if d < 3:  # noqa: PLR2004
        raise DomainError("bad_degree", f"d must be >= 3, got {d}")
    return d // 3 if d % 3 == 0 else d


def coreg_positive_guarantee(r: Fraction) -> bool:
    """Coregularity is positive when 1 is not in rZ."""
    if r <= 0:
        raise DomainError("bad_parameter", f"r must be positive, got {r}")
    return (1 / r).denominator != 1


def regularity(dim: int, coreg: int) -> tuple[int, str | None]:
    """reg = dim - coreg - 1, labelled by type for surfaces."""
    if dim < 0 or not 0 <= coreg <= dim:
        raise DomainError(
            "bad_parameter", f"Need 0 <= coreg <= dim, got dim={dim}, coreg={coreg}"
        )
    reg = dim - coreg - 1
    return reg, SURFACE_TYPES.get(reg) if dim == 2 else None  # noqa: PLR2004


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        return None
    return Fraction(num, den)


def _coprime_numerators(b: int) -> list[int]:
    return [a for a in range(1, b) if gcd(a, b) == 1]


def _denominator_patterns(s: Fraction, slots: int, low: int) -> list[tuple[int, ...]]:
    if slots == 0:
        return [()] if s == 0 else []
    if slots == 1:
        if not 0 < s < 1:
            return []
        b = 1 / (1 - s)
        return [(int(b),)] if b.denominator == 1 and b >= low else []
    patterns: list[tuple[int, ...]] = []
    share = s / slots
    if share >= 1:
        return []
    # the smallest denominator carries at most an equal share of s
    high = floor(1 / (1 - share))
    for b in range(low, high + 1):
        rest = s - (1 - Fraction(1, b))
        tails = _denominator_patterns(rest, slots - 1, b)
        patterns.extend((b, *tail) for tail in tails)
    return patterns


def orbifold_patterns(s: Fraction) -> list[tuple[Fraction, ...]]:
    """
    Every fractional pattern (a_i/b_i) with b_i >= 2, a_i coprime to b_i and
    sum (b_i - 1)/b_i = s, denominators ascending.

    Raises:
        DomainError: If s is outside [0, 2)
    """
    if not 0 <= s < 2:  # noqa: PLR2004
        raise DomainError("bad_parameter", f"deg L_orb must lie in [0, 2), got {s}")
    patterns: list[tuple[Fraction, ...]] = []
    for slots in range(MAX_ORBIFOLD_POINTS + 1):
        for denominators in _denominator_patterns(s, slots, 2):
            choices = [
                [Fraction(a, b) for a in _coprime_numerators(b)] for b in denominators
            ]
            patterns.extend(tuple(p) for p in product(*choices))
    return patterns


def _orbifold_degree(fracs: Iterable[Fraction]) -> Fraction:
    return sum((Fraction(f.denominator - 1, f.denominator) for f in fracs), Fraction(0))


def _labelled(fracs: Iterable[Fraction]) -> tuple[tuple[str, Fraction], ...]:
    return tuple((f"p{i}", f) for i, f in enumerate(fracs))


def typeII_case_ii_enumerate(  # noqa: N802
    s: Fraction, fracs: Sequence[Fraction] | None = None
) -> list[TypeIIRecord]:
    """
    Orbifold cones over (P^1, L_orb) of volume 9: rational roots r of
    (2-s) r^2 + (2(2-s) - 9) r + (2-s) = 0 with deg L = (2-s)/r compatible
    with a fractional pattern of L_orb.

    Raises:
        DomainError: If s is outside [0, 2) or the pattern has the wrong degree
    """
    if not 0 <= s < 2:  # noqa: PLR2004
        raise DomainError("bad_parameter", f"s must lie in [0, 2), got {s}")
    if fracs is None:
        patterns = orbifold_patterns(s)
    else:
        pattern = tuple(fracs)
        orb_degree = _orbifold_degree(pattern)
        if orb_degree != s:
            raise DomainError(
                "pattern_mismatch",
                f"Fractional pattern has deg L_orb = {orb_degree}, not {s}",
            )
        patterns = [pattern]

    a = 2 - s
    b = 2 * a - 9
    root = _rational_sqrt(b * b - 4 * a * a)
    if root is None:
        logger.debug("Discriminant for s=%s is not a rational square", s)
        return []
    roots = sorted({(-b - root) / (2 * a), (-b + root) / (2 * a)})

    records: list[TypeIIRecord] = []
    for r in roots:
        if r <= 0:
            continue
        degree = a / r
        for pattern in patterns:
            if (degree - sum(pattern, Fraction(0))).denominator != 1:
                continue
            polarization = OrbifoldPolarization(degree, _labelled(pattern))
            name, _ = identify_cone(polarization)
            records.append(
                TypeIIRecord(
                    TypeIICase.ORBIFOLD_CONE,
                    {
                        "s": s,
                        "r": r,
                        "deg_L": degree,
                        "fracs": list(pattern),
                        "identified_as": name,
                    },
                )
            )
    return records


def _admissible_offsets(
    fracs: Sequence[Fraction], vary_numerators: bool
) -> set[Fraction]:
    if not vary_numerators:
        total = sum(fracs, Fraction(0))
        return {total - floor(total)}
    offsets = set()
    choices = [
        [Fraction(a, f.denominator) for a in _coprime_numerators(f.denominator)]
        for f in fracs
    ]
    for combo in product(*choices):
        total = sum(combo, Fraction(0))
        offsets.add(total - floor(total))
    return offsets


def admissible_degrees(offsets: Iterable[Fraction], bound: Fraction) -> list[Fraction]:
    """Positive t = f + n, n >= 0, up to bound, plus one guard step per offset."""
    degrees = set()
    for f in offsets:
        t = f if f > 0 else Fraction(1)
        while t <= bound:
            degrees.add(t)
            t += 1
        degrees.add(t)
    return sorted(degrees)


def typeII_case_iv_enumerate(  # noqa: N802
    fracs: Sequence[Fraction],
    sigma: Fraction | None = None,
    *,
    vary_numerators: bool = False,
) -> list[TypeIIRecord]:
    """
    Pairs of cones glued along a curve: admissible t1 <= t2 with
    1/t1 + 1/t2 = 9/(2 - sigma)^2, where sigma = deg Delta_E.

    Raises:
        DomainError: If sigma is outside [0, 2) or disagrees with the fractions
    """
    forced = _orbifold_degree(fracs)
    if sigma is None:
        sigma = forced
    elif sigma != forced:
        raise DomainError(
            "pattern_mismatch",
            f"Fractions force deg Delta_E = {forced}, not {sigma}",
        )
    if not 0 <= sigma < 2:  # noqa: PLR2004
        raise DomainError("bad_parameter", f"sigma must lie in [0, 2), got {sigma}")

    target = 9 / (2 - sigma) ** 2
    offsets = _admissible_offsets(fracs, vary_numerators)
    records = []
    for t1 in admissible_degrees(offsets, 2 / target):
        rest = target - 1 / t1
        if rest <= 0:
            continue
        t2 = 1 / rest
        if t2 < t1 or t2 - floor(t2) not in offsets:
            continue
        records.append(
            TypeIIRecord(
                TypeIICase.GLUED_CONES,
                {
                    "sigma": sigma,
                    "t1": t1,
                    "t2": t2,
                    "r1": (2 - sigma) / t1,
                    "r2": (2 - sigma) / t2,
                },
            )
        )
    logger.debug("Case (iv) for sigma=%s: %d solutions", sigma, len(records))
    return records


def case_iii_values(
    surface: ToricSurface, exceptional_ray: LatticeVector, deg_delta: Fraction
) -> dict[str, Any]:
    """A_X(E), E^2 on the extraction, and both sides of A * (-E^2) = 2 - deg Delta_E."""
    ray = primitive(exceptional_ray)
    a_value = log_discrepancy(
        surface, ToricDivisor.zero(surface), ToricValuation.of(ray.x, ray.y)
    )
    extraction = star_subdivide(surface, ray)
    index = extraction.ray_index(ray)
    assert index is not None
    e_sq = self_intersection(extraction, index)
    lhs = a_value * -e_sq
    rhs = 2 - deg_delta
    return {"A": a_value, "E_sq": e_sq, "lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def typeII_case_iii_check(  # noqa: N802
    surface: ToricSurface, exceptional_ray: LatticeVector, deg_delta: Fraction
) -> bool:
    return bool(case_iii_values(surface, exceptional_ray, deg_delta)["holds"])


def case_iii_record(
    surface: ToricSurface, exceptional_ray: LatticeVector, deg_delta: Fraction
) -> TypeIIRecord:
    values = case_iii_values(surface, exceptional_ray, deg_delta)
    return TypeIIRecord(
        TypeIICase.TORIC_MANETTI,
        {"A": values["A"], "deg_L": -values["E_sq"], "deg_delta": deg_delta},
    )


def elliptic_cone_record() -> TypeIIRecord:
    """The elliptic cone of degree 9; the curve modulus stays symbolic."""
    return TypeIIRecord(
        TypeIICase.ELLIPTIC_CONE,
        {"deg_L": ELLIPTIC_CONE_DEGREE, "r": Fraction(0), "volume": PLANE_VOLUME},
    )


def typeIII_canonical(d: int) -> TypeIIIRecord:  # noqa: N802
    """
    Raises:
        DomainError: If 3 does not divide d
    """
    if d < 3 or d % 3 != 0:  # noqa: PLR2004
        raise DomainError(
            "not_type_iii",
            f"3 does not divide d={d}: the pair is Type I or II",
            {"d": d},
        )
    return TypeIIIRecord(d=d, exponent=d // 3, marking=Fraction(3, d))


def git_points_semistable(multiplicities: Sequence[int], d: int) -> str:
    """GIT state of a degree d point configuration on P^1."""
    if any(m <= 0 for m in multiplicities):
        raise DomainError("bad_parameter", "Multiplicities must be positive")
    if sum(multiplicities) != d:
        raise DomainError(
            "degree_mismatch",
            f"Multiplicities sum to {sum(multiplicities)}, not d={d}",
        )
    if any(2 * m > d for m in multiplicities):
        return GitState.UNSTABLE
    if all(2 * m < d for m in multiplicities):
        return GitState.STABLE
    return GitState.SEMISTABLE


def git_polystable_representative(d: int) -> list[int] | None:
    """Strictly semistable points degenerate to d/2 [0] + d/2 [inf]; none for odd d."""
    if d < 1:
        raise DomainError("bad_degree", f"d must be positive, got {d}")
    if d % 2:
        return None
    return [d // 2, d // 2]


def coreg0_index_bound(lam: int) -> int:
    if lam < 1:
        raise DomainError("bad_parameter", f"lambda must be >= 1, got {lam}")
    return lcm(lam, 2)


def boundedness_table(bound: int, d: int) -> list[dict[str, Any]]:
    """Cartier index abc of P(a^2, b^2, c^2) per Markov triple against the fixed N_d."""
    nd = index_nd(d)
    rows = []
    for triple in enumerate_triples(bound):
        report = markov_surface(triple)
        rows.append(
            {
                **triple.to_dict(),
                "index": report.index,
                "N_d": nd,
                "exceeds_N_d": report.index > nd,
            }
        )
    return rows
