# src/models/toric.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb, gcd, lcm
from typing import Any

from .base import DomainError, ValueObject, as_rational
from .lattice import (
    LatticeVector,
    Polygon,
    halfplane_polygon,
    lattice_count,
    polygon_area,
)

logger = logging.getLogger(__name__)

# The wps ray search must stay within this multiple of the weight sum
RAY_SEARCH_FACTOR = 4


def _half(v: LatticeVector) -> int:
    return 0 if v.y > 0 or (v.y == 0 and v.x > 0) else 1


def _angle_cmp(a: LatticeVector, b: LatticeVector) -> int:
    """Compare by counterclockwise angle measured from the positive x-axis."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    d = a.det(b)
    return -1 if d > 0 else (1 if d < 0 else 0)


@dataclass(frozen=True)
class ToricSurface(ValueObject):
    """
    Complete toric surface given by its fan.

    Rays are primitive, pairwise distinct and ordered counterclockwise so
    that each pair of consecutive rays spans a strictly convex cone and the
    rays wind around the origin exactly once.
    """

    rays: tuple[LatticeVector, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        rays = self.rays
        if len(rays) < 3:  # noqa: PLR2004
            raise DomainError(
                "incomplete_fan", "A complete fan needs at least three rays"
            )
        for v in rays:
            if v.is_zero or gcd(abs(v.x), abs(v.y)) != 1:
                raise DomainError(
                    "not_primitive",
                    f"Ray {v.to_list()} is not a primitive lattice vector",
                )
        if len(set(rays)) != len(rays):
            raise DomainError("duplicate_ray", "Fan rays must be pairwise distinct")

        n = len(rays)
        wraps = 0
        for i in range(n):
            a, b = rays[i], rays[(i + 1) % n]
            if a.det(b) <= 0:
                raise DomainError(
                    "incomplete_fan",
                    "Consecutive rays must span a strictly convex cone",
                    {"cone": [a.to_list(), b.to_list()]},
                )
            if _angle_cmp(a, b) > 0:
                wraps += 1
        if wraps != 1:
            raise DomainError(
                "incomplete_fan", "Rays must wind counterclockwise exactly once"
            )

    def __len__(self) -> int:
        return len(self.rays)

    def ray(self, index: int) -> LatticeVector:
        return self.rays[index % len(self.rays)]

    def cones(self) -> list[tuple[int, int]]:
        n = len(self.rays)
        return [(i, (i + 1) % n) for i in range(n)]

    def ray_index(self, v: LatticeVector) -> int | None:
        try:
            return self.rays.index(v)
        except ValueError:
            return None

    @property
    def is_smooth(self) -> bool:
        return all(self.ray(i).det(self.ray(j)) == 1 for i, j in self.cones())

    def to_dict(self) -> dict[str, Any]:
        """Convert the fan to its JSON file form."""
        return {"rays": [v.to_list() for v in self.rays], "name": self.name}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ToricSurface":
        """
        Create a ToricSurface from its JSON file form.

        Raises:
            DomainError: If the rays do not form a complete fan
        """
        try:
            rays = tuple(LatticeVector(int(x), int(y)) for x, y in data["rays"])
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError("bad_fan", f"Malformed fan data: {e}") from e
        return cls(rays=rays, name=data.get("name"))


@dataclass(frozen=True)
class ToricDivisor(ValueObject):
    """Torus-invariant Q-divisor: one coefficient per ray index."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if any(not isinstance(c, Fraction) for c in self.coefficients):
            raise DomainError("bad_divisor", "Divisor coefficients must be Fractions")

    @classmethod
    def of(cls, values: Sequence[Fraction | int | str]) -> "ToricDivisor":
        return cls(tuple(as_rational(v) for v in values))

    @classmethod
    def zero(cls, surface: ToricSurface) -> "ToricDivisor":
        return cls(tuple(Fraction(0) for _ in surface.rays))

    def check_against(self, surface: ToricSurface) -> None:
        if len(self.coefficients) != len(surface.rays):
            raise DomainError(
                "bad_divisor",
                f"Divisor has {len(self.coefficients)} coefficients "
                f"for {len(surface.rays)} rays",
            )

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class ToricValuation(ValueObject):
    """Toric valuation given by a nonzero weight in N tensor Q."""

    vector: tuple[Fraction, Fraction]

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if any(not isinstance(c, Fraction) for c in self.vector):
            raise DomainError("bad_valuation", "Valuation weights must be Fractions")
        if self.vector[0] == 0 and self.vector[1] == 0:
            raise DomainError("bad_valuation", "Valuation weight must be nonzero")

    @classmethod
    def of(cls, x: Fraction | int | str, y: Fraction | int | str) -> "ToricValuation":
        return cls((as_rational(x), as_rational(y)))

    def to_list(self) -> list[str]:
        return [str(c) for c in self.vector]


def anticanonical_divisor(surface: ToricSurface) -> ToricDivisor:
    """-K_X as the sum of all toric prime divisors."""
    return ToricDivisor(tuple(Fraction(1) for _ in surface.rays))


def wps(a0: int, a1: int, a2: int, name: str | None = None) -> ToricSurface:
    """
    Fan of the weighted projective plane P(a0, a1, a2).

    The rays v0 = (a2, y0), v1 = (0, 1), v2 = (-a0, y2) satisfy
    a0*v0 + a1*v1 + a2*v2 = 0 with det(v0, v1) = a2, det(v1, v2) = a0 and
    det(v2, v0) = a1. Among the solutions, the one with the smallest
    max-norm is chosen, then the smallest |y0|, then y0 >= 0.

    Raises:
        DomainError: If a weight is not positive or two weights share a factor
    """
    weights = (a0, a1, a2)
    if any(isinstance(a, bool) or not isinstance(a, int) or a <= 0 for a in weights):
        raise DomainError(
            "bad_weights", f"Weights must be positive integers, got {list(weights)}"
        )
    for i, j in combinations(range(3), 2):
        g = gcd(weights[i], weights[j])
        if g != 1:
            raise DomainError(
                "not_well_formed",
                f"Weights {weights[i]} and {weights[j]} (positions {i}, {j}) "
                f"share the factor {g}",
                {"pair": [i, j], "weights": list(weights)},
            )

    base = (-a1 * pow(a0, -1, a2)) % a2 if a2 > 1 else 0
    # max(|y0|, |y2|) is convex in y0 and balanced near -a1 / (a0 + a2)
    balance = Fraction(-a1, a0 + a2)
    t0 = (balance - base) // a2
    best: tuple[tuple[int, int, int], tuple[LatticeVector, ...]] | None = None
    for t in range(int(t0) - 1, int(t0) + 3):
        y0 = base + t * a2
        y2 = (-a1 - a0 * y0) // a2
        rays = (LatticeVector(a2, y0), LatticeVector(0, 1), LatticeVector(-a0, y2))
        norm = max(max(abs(v.x), abs(v.y)) for v in rays)
        key = (norm, abs(y0), -y0)
        if best is None or key < best[0]:
            best = (key, rays)
    assert best is not None
    if best[0][0] > RAY_SEARCH_FACTOR * sum(weights):
        raise DomainError(
            "ray_search_failed", f"No fan within the search bound for {list(weights)}"
        )
    label = name or f"P({a0},{a1},{a2})"
    logger.debug("Built fan for %s: %s", label, [v.to_list() for v in best[1]])
    return ToricSurface(rays=best[1], name=label)


def wps_weights(surface: ToricSurface) -> tuple[int, int, int]:
    """
    Normalized weights of a three-ray fan, a_i = det(v_{i+1}, v_{i+2}) / g.

    Raises:
        DomainError: If the fan does not have exactly three rays
    """
    if len(surface.rays) != 3:  # noqa: PLR2004
        raise DomainError("not_wps", "Only three-ray fans have weights")
    raw = [surface.ray(i + 1).det(surface.ray(i + 2)) for i in range(3)]
    g = gcd(*raw)
    return (raw[0] // g, raw[1] // g, raw[2] // g)


def self_intersection(surface: ToricSurface, ray_index: int) -> Fraction:
    """D_rho^2 = -det(v_prev, v_next) / (det(v_prev, v_rho) * det(v_rho, v_next))."""
    prev = surface.ray(ray_index - 1)
    rho = surface.ray(ray_index)
    nxt = surface.ray(ray_index + 1)
    return Fraction(-prev.det(nxt), prev.det(rho) * rho.det(nxt))


def locate(
    surface: ToricSurface, w: Sequence[Fraction | int]
) -> tuple[int, int, Fraction, Fraction]:
    """
    Find a maximal cone containing w and its coordinates in that cone.

    Returns:
        (i, j, alpha, beta) with w = alpha * v_i + beta * v_j, alpha, beta >= 0
    """
    wx, wy = Fraction(w[0]), Fraction(w[1])
    for i, j in surface.cones():
        vi, vj = surface.ray(i), surface.ray(j)
        d = vi.det(vj)
        alpha = (wx * vj.y - wy * vj.x) / d
        beta = (vi.x * wy - vi.y * wx) / d
        if alpha >= 0 and beta >= 0:
            return i, j, alpha, beta
    raise DomainError("not_in_fan", "Vector is not in the support of the fan")


def log_discrepancy(
    surface: ToricSurface, boundary: ToricDivisor, w: ToricValuation
) -> Fraction:
    """
    A_{X, Delta}(w): the piecewise-linear function equal to 1 - coeff on each ray.

    Raises:
        DomainError: If a boundary coefficient exceeds 1
    """
    boundary.check_against(surface)
    if any(c > 1 for c in boundary.coefficients):
        raise DomainError("not_sub_boundary", "Boundary coefficients must be <= 1")
    i, j, alpha, beta = locate(surface, w.vector)
    coeffs = boundary.coefficients
    return alpha * (1 - coeffs[i]) + beta * (1 - coeffs[j])


def divisor_polytope(surface: ToricSurface, divisor: ToricDivisor) -> Polygon:
    """Section polytope P_D = {u : <u, v_rho> >= -d_rho for all rho}."""
    divisor.check_against(surface)
    return halfplane_polygon(surface.rays, divisor.coefficients)


def anticanonical_polytope(surface: ToricSurface, boundary: ToricDivisor) -> Polygon:
    boundary.check_against(surface)
    return divisor_polytope(
        surface, ToricDivisor(tuple(1 - c for c in boundary.coefficients))
    )


def anticanonical_volume(surface: ToricSurface, boundary: ToricDivisor) -> Fraction:
    """(-K_X - Delta)^2 as twice the area of its polytope; 0 when empty."""
    if any(c > 1 for c in boundary.coefficients):
        raise DomainError("not_sub_boundary", "Boundary coefficients must be <= 1")
    return 2 * polygon_area(anticanonical_polytope(surface, boundary))


def toric_divisor_class_sq(surface: ToricSurface, divisor: ToricDivisor) -> Fraction:
    """D^2 as twice the area of P_D; only meaningful for nef D."""
    return 2 * polygon_area(divisor_polytope(surface, divisor))


def is_ample(surface: ToricSurface, divisor: ToricDivisor) -> bool:
    """
    Toric ampleness: for every maximal cone the solution u_sigma of
    <u, v_i> = -d_i, <u, v_j> = -d_j lies strictly inside every other half-plane.
    """
    divisor.check_against(surface)
    coeffs = divisor.coefficients
    for i, j in surface.cones():
        vi, vj = surface.ray(i), surface.ray(j)
        d = vi.det(vj)
        ux = (-coeffs[i] * vj.y + coeffs[j] * vi.y) / d
        uy = (-coeffs[j] * vi.x + coeffs[i] * vj.x) / d
        for k, vk in enumerate(surface.rays):
            if k in (i, j):
                continue
            if vk.x * ux + vk.y * uy <= -coeffs[k]:
                return False
    return True


def cone_gorenstein_index(surface: ToricSurface, i: int, j: int) -> int:
    """Smallest m with an integral u such that <u, v_i> = <u, v_j> = -m."""
    vi, vj = surface.ray(i), surface.ray(j)
    d = vi.det(vj)
    ux = Fraction(-vj.y + vi.y, d)
    uy = Fraction(-vi.x + vj.x, d)
    return lcm(ux.denominator, uy.denominator)


def gorenstein_index(surface: ToricSurface) -> int:
    """Cartier index of K_X, the lcm of the local indices of the maximal cones."""
    return lcm(*(cone_gorenstein_index(surface, i, j) for i, j in surface.cones()))


def hilbert(surface: ToricSurface, divisor: ToricDivisor, m: int) -> int:
    """h^0(X, mD) as the number of lattice points of m * P_D."""
    return lattice_count(divisor_polytope(surface, divisor), m)


def hilbert_series(
    surface: ToricSurface, divisor: ToricDivisor, m_max: int
) -> list[int]:
    polytope = divisor_polytope(surface, divisor)
    return [lattice_count(polytope, m) for m in range(m_max + 1)]


def binomial_chi(m: int) -> int:
    """binom(3 + m, m), reported next to lattice counts on P^2."""
    return comb(3 + m, m)


def star_subdivide(surface: ToricSurface, w: LatticeVector) -> ToricSurface:
    """
    Insert the primitive vector w into the cone containing it.

    Raises:
        DomainError: If w is not primitive or is already a ray
    """
    if w.is_zero or gcd(abs(w.x), abs(w.y)) != 1:
        raise DomainError("not_primitive", f"{w.to_list()} is not primitive")
    if w in surface.rays:
        raise DomainError(
            "already_a_ray", f"{w.to_list()} is already a ray", {"ray": w.to_list()}
        )
    i, _, _, _ = locate(surface, (w.x, w.y))
    rays = (*surface.rays[: i + 1], w, *surface.rays[i + 1 :])
    name = f"{surface.name}+{w.to_list()}" if surface.name else None
    return ToricSurface(rays=rays, name=name)


def _unimodular_map(
    sources: Sequence[LatticeVector], targets: Sequence[LatticeVector]
) -> bool:
    """True if one GL2(Z) matrix sends every source ray to its target."""
    v0, v1 = sources[0], sources[1]
    t0, t1 = targets[0], targets[1]
    d = v0.det(v1)
    # M = [t0 t1] * [v0 v1]^{-1}
    m11 = Fraction(t0.x * v1.y - t1.x * v0.y, d)
    m12 = Fraction(-t0.x * v1.x + t1.x * v0.x, d)
    m21 = Fraction(t0.y * v1.y - t1.y * v0.y, d)
    m22 = Fraction(-t0.y * v1.x + t1.y * v0.x, d)
    entries = (m11, m12, m21, m22)
    if any(e.denominator != 1 for e in entries):
        return False
    if abs(m11 * m22 - m12 * m21) != 1:
        return False
    return all(
        m11 * s.x + m12 * s.y == t.x and m21 * s.x + m22 * s.y == t.y
        for s, t in zip(sources, targets, strict=True)
    )


def is_isomorphic(first: ToricSurface, second: ToricSurface) -> bool:
    """GL2(Z) isomorphism of complete fans, up to rotation and reflection."""
    n = len(first.rays)
    if n != len(second.rays):
        return False
    for shift in range(n):
        forward = [second.ray(shift + k) for k in range(n)]
        backward = [second.ray(shift - k) for k in range(n)]
        if any(_unimodular_map(first.rays, target) for target in (forward, backward)):
            return True
    return False


def angle_sorted(rays: Sequence[LatticeVector]) -> list[LatticeVector]:
    """Rays in counterclockwise order from the positive x-axis."""
    return sorted(rays, key=cmp_to_key(_angle_cmp))
