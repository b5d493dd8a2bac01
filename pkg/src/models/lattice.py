# src/models/lattice.py
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, floor, gcd

from .base import DomainError, ValueObject, as_rational

logger = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]
Vector = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class LatticeVector(ValueObject):
    """Value object representing a vector of the lattice N = Z^2."""

    x: int
    y: int

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        for coord in (self.x, self.y):
            if isinstance(coord, bool) or not isinstance(coord, int):
                raise DomainError(
                    "bad_vector",
                    f"Lattice coordinates must be integers, got {coord!r}",
                    {"x": repr(self.x), "y": repr(self.y)},
                )

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def det(self, other: "LatticeVector") -> int:
        """Determinant of the 2x2 matrix with columns self, other."""
        return self.x * other.y - self.y * other.x

    def as_point(self) -> Point:
        return (Fraction(self.x), Fraction(self.y))

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x + other.x, self.y + other.y)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.x, -self.y)

    def scale(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.x, k * self.y)

    def to_list(self) -> list[int]:
        return [self.x, self.y]


def primitive(v: LatticeVector) -> LatticeVector:
    """
    Divide a lattice vector by the gcd of its coordinates.

    Raises:
        DomainError: If v is the zero vector
    """
    if v.is_zero:
        raise DomainError("zero_vector", "zero vector has no primitive")
    g = gcd(abs(v.x), abs(v.y))
    return LatticeVector(v.x // g, v.y // g)


def dot(w: Sequence[Fraction | int], u: Sequence[Fraction | int]) -> Fraction:
    return Fraction(w[0]) * u[0] + Fraction(w[1]) * u[1]


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of the triangle o, a, b (positive when CCW)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _as_point(p: Sequence[Fraction | int | str]) -> Point:
    return (as_rational(p[0]), as_rational(p[1]))


def convex_hull(points: Iterable[Sequence[Fraction | int | str]]) -> list[Point]:
    """Monotone-chain hull, CCW, collinear points dropped, least vertex first."""
    pts = sorted({_as_point(p) for p in points})
    if len(pts) <= 2:  # noqa: PLR2004
        return pts

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:  # noqa: PLR2004
            lower.pop()
        lower.append(p)

    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:  # noqa: PLR2004
            upper.pop()
        upper.append(p)

    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Polygon(ValueObject):
    """
    Convex polygon with exact rational vertices.

    Vertices are stored normalized: counterclockwise, strictly convex, and
    starting from the lexicographically least vertex. Segments and points are
    allowed and are flagged degenerate.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        verts = self.vertices
        if any(not isinstance(c, Fraction) for v in verts for c in v):
            raise DomainError("bad_polygon", "Polygon vertices must be Fractions")
        if len(verts) != len(set(verts)):
            raise DomainError("bad_polygon", "Polygon vertices must be distinct")
        if verts and verts[0] != min(verts):
            raise DomainError(
                "bad_polygon", "Polygon must start at its lexicographically least point"
            )
        if len(verts) >= 3:  # noqa: PLR2004
            n = len(verts)
            for i in range(n):
                if cross(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]) <= 0:
                    raise DomainError(
                        "bad_polygon",
                        "Polygon must be strictly convex and counterclockwise",
                        {"vertex": [str(c) for c in verts[(i + 1) % n]]},
                    )

    @classmethod
    def from_points(cls, points: Iterable[Sequence[Fraction | int | str]]) -> "Polygon":
        """Build the normalized convex hull of the given points."""
        return cls(tuple(convex_hull(points)))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3  # noqa: PLR2004

    def dilate(self, m: int | Fraction) -> "Polygon":
        factor = Fraction(m)
        if factor == 0:
            return Polygon.from_points([(0, 0)]) if self.vertices else self
        return Polygon.from_points((factor * x, factor * y) for x, y in self.vertices)

    def translate(self, shift: Sequence[Fraction | int]) -> "Polygon":
        dx, dy = Fraction(shift[0]), Fraction(shift[1])
        return Polygon.from_points((x + dx, y + dy) for x, y in self.vertices)

    def contains(self, point: Sequence[Fraction | int]) -> bool:
        """Exact membership test (boundary included)."""
        p = (Fraction(point[0]), Fraction(point[1]))
        verts = self.vertices
        if not verts:
            return False
        if len(verts) == 1:
            return p == verts[0]
        if len(verts) == 2:  # noqa: PLR2004
            a, b = verts
            return (
                cross(a, b, p) == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
            )
        n = len(verts)
        return all(cross(verts[i], verts[(i + 1) % n], p) >= 0 for i in range(n))

    def triangles(self) -> list[tuple[Point, Point, Point]]:
        """Fan triangulation from the first vertex."""
        v = self.vertices
        return [(v[0], v[i], v[i + 1]) for i in range(1, len(v) - 1)]

    def centroid(self) -> Point:
        """
        Exact area centroid.

        Raises:
            DomainError: If the polygon is degenerate
        """
        area = polygon_area(self)
        if area == 0:
            raise DomainError("degenerate_polygon", "Polygon has no centroid")
        cx = cy = Fraction(0)
        for a, b, c in self.triangles():
            t_area = cross(a, b, c) / 2
            cx += t_area * (a[0] + b[0] + c[0]) / 3
            cy += t_area * (a[1] + b[1] + c[1]) / 3
        return (cx / area, cy / area)

    def to_list(self) -> list[list[str]]:
        return [[str(x), str(y)] for x, y in self.vertices]


def polygon_area(polygon: Polygon) -> Fraction:
    """Exact shoelace area; degenerate polygons have area 0."""
    verts = polygon.vertices
    if polygon.is_degenerate:
        return Fraction(0)
    n = len(verts)
    twice = sum(
        (verts[i][0] * verts[(i + 1) % n][1] - verts[(i + 1) % n][0] * verts[i][1]
         for i in range(n)),
        Fraction(0),
    )
    return abs(twice) / 2


def lattice_points(polygon: Polygon, m: int = 1) -> list[tuple[int, int]]:
    """
    Integer points of the m-th dilate, by exhaustive scan of the bounding box.

    Raises:
        DomainError: If m is negative
    """
    if m < 0:
        raise DomainError("bad_dilation", f"Dilation factor must be >= 0, got {m}")
    if polygon.is_empty:
        return []
    if m == 0:
        return [(0, 0)]

    dilated = polygon.dilate(m)
    xs = [v[0] for v in dilated.vertices]
    ys = [v[1] for v in dilated.vertices]
    points = [
        (x, y)
        for x in range(ceil(min(xs)), floor(max(xs)) + 1)
        for y in range(ceil(min(ys)), floor(max(ys)) + 1)
        if dilated.contains((x, y))
    ]
    logger.debug("Counted %d lattice points in dilate %d", len(points), m)
    return points


def lattice_count(polygon: Polygon, m: int = 1) -> int:
    return len(lattice_points(polygon, m))


def linear_integral(polygon: Polygon, w: Sequence[Fraction | int]) -> Fraction:
    """
    Exact value of the integral of <w, u> over the polygon.

    Each triangle of a fan triangulation contributes area * <w, centroid>.

    Raises:
        DomainError: If the polygon is degenerate or <w, .> is negative at a vertex
    """
    if polygon.is_degenerate:
        raise DomainError(
            "degenerate_polygon",
            "linear integral needs a polygon with positive area",
            {"vertices": polygon.to_list()},
        )
    if any(dot(w, v) < 0 for v in polygon.vertices):
        raise DomainError(
            "negative_functional",
            "shift to a minimizing vertex first",
            {"w": [str(Fraction(c)) for c in w]},
        )
    total = Fraction(0)
    for a, b, c in polygon.triangles():
        centroid = ((a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3)
        total += (cross(a, b, c) / 2) * dot(w, centroid)
    return total


def halfplane_polygon(
    normals: Sequence[LatticeVector], offsets: Sequence[Fraction]
) -> Polygon:
    """
    Polygon {u : <u, n_i> >= -c_i for all i}, assumed bounded.

    Vertices are found among pairwise intersections of the boundary lines,
    so the result is empty when no intersection is feasible.
    """
    if len(normals) != len(offsets):
        raise DomainError("bad_halfplanes", "Need one offset per normal")

    def feasible(u: Point) -> bool:
        return all(
            n.x * u[0] + n.y * u[1] >= -c for n, c in zip(normals, offsets, strict=True)
        )

    candidates: list[Point] = []
    for (n1, c1), (n2, c2) in combinations(zip(normals, offsets, strict=True), 2):
        d = n1.det(n2)
        if d == 0:
            continue
        # solve <u, n1> = -c1, <u, n2> = -c2 by Cramer's rule
        ux = Fraction(-c1 * n2.y + c2 * n1.y, d)
        uy = Fraction(-c2 * n1.x + c1 * n2.x, d)
        u = (ux, uy)
        if feasible(u):
            candidates.append(u)
    return Polygon.from_points(candidates)
