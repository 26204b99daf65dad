"""Exact integer/rational convex geometry in the plane.

Everything here is computed with integer or rational arithmetic only: vertex
coordinates are rationals with a shared denominator, all comparisons go
through cross-multiplication, and lattice-point enumeration uses exact
ceiling/floor on half-plane constraints.  Degenerate regions (empty, point,
segment) are ordinary values, not errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    CoordinateOverflowError,
    DecompositionRangeError,
    EmptyInputError,
    NoIntegerInIntervalError,
    PreconditionError,
    UnboundedRegionError,
)

#: Input coordinates (points, rays, divisor coefficients) must stay within
#: this bound; it keeps instances desk-scale and fails loudly on absurd data.
INPUT_COORD_BOUND = 10**6

#: Guard for derived integer quantities.  Python integers cannot overflow,
#: so this only catches runaway arithmetic, mirroring a checked 128-bit bound.
_INTERMEDIATE_BOUND = 2**127 - 1


def check_input_coord(value: int, what: str = "coordinate") -> int:
    if abs(value) > INPUT_COORD_BOUND:
        raise CoordinateOverflowError(f"{what} {value} exceeds |value| <= {INPUT_COORD_BOUND}")
    return value


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a/b for integers, b > 0."""
    return -((-a) // b)


def floor_div(a: int, b: int) -> int:
    """Exact floor of a/b for integers, b > 0."""
    return a // b


@dataclass(frozen=True, order=True)
class LatticeVector:
    """An integer point of the rank-2 lattice (character or ray data)."""

    x: int
    y: int

    def __post_init__(self) -> None:
        if not isinstance(self.x, int) or not isinstance(self.y, int):
            raise TypeError("lattice coordinates must be int")
        if abs(self.x) > _INTERMEDIATE_BOUND or abs(self.y) > _INTERMEDIATE_BOUND:
            raise CoordinateOverflowError("coordinate exceeds the 128-bit intermediate bound")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.x, -self.y)

    def dot(self, other: "LatticeVector") -> int:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "LatticeVector") -> int:
        return self.x * other.y - self.y * other.x

    def is_primitive(self) -> bool:
        return math.gcd(self.x, self.y) == 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class RationalPoint:
    """A rational point stored as (x_num/den, y_num/den) in lowest form.

    den >= 1 and gcd(x_num, y_num, den) = 1 after normalization, so equal
    points always have equal field values.
    """

    x_num: int
    y_num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        xn, yn, d = self.x_num, self.y_num, self.den
        if d < 0:
            xn, yn, d = -xn, -yn, -d
        g = math.gcd(math.gcd(abs(xn), abs(yn)), d)
        if g > 1:
            xn, yn, d = xn // g, yn // g, d // g
        object.__setattr__(self, "x_num", xn)
        object.__setattr__(self, "y_num", yn)
        object.__setattr__(self, "den", d)

    @classmethod
    def from_fractions(cls, x: Fraction, y: Fraction) -> "RationalPoint":
        den = (x.denominator * y.denominator) // math.gcd(x.denominator, y.denominator)
        return cls(x.numerator * (den // x.denominator), y.numerator * (den // y.denominator), den)

    @classmethod
    def from_lattice(cls, v: LatticeVector) -> "RationalPoint":
        return cls(v.x, v.y, 1)

    @property
    def x(self) -> Fraction:
        return Fraction(self.x_num, self.den)

    @property
    def y(self) -> Fraction:
        return Fraction(self.y_num, self.den)

    def is_lattice(self) -> bool:
        return self.den == 1

    def to_lattice(self) -> LatticeVector:
        if self.den != 1:
            raise PreconditionError(f"{self} is not a lattice point")
        return LatticeVector(self.x_num, self.y_num)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __str__(self) -> str:
        if self.den == 1:
            return f"({self.x_num}, {self.y_num})"
        return f"({self.x_num}/{self.den}, {self.y_num}/{self.den})"


@dataclass(frozen=True)
class HalfPlane:
    """The closed region { u : <u, normal> >= -offset } with primitive normal."""

    normal: LatticeVector
    offset: int

    def __post_init__(self) -> None:
        if self.normal.x == 0 and self.normal.y == 0:
            raise PreconditionError("half-plane normal must be nonzero")
        if not self.normal.is_primitive():
            raise PreconditionError(f"half-plane normal {self.normal.as_tuple()} is not primitive")
        if abs(self.offset) > _INTERMEDIATE_BOUND:
            raise CoordinateOverflowError("offset exceeds the 128-bit intermediate bound")

    def contains_lattice(self, p: LatticeVector) -> bool:
        return self.normal.x * p.x + self.normal.y * p.y >= -self.offset

    def contains(self, p: RationalPoint) -> bool:
        return self.normal.x * p.x_num + self.normal.y * p.y_num >= -self.offset * p.den


class PolygonDim(Enum):
    EMPTY = "empty"
    POINT = "point"
    SEGMENT = "segment"
    POLYGON = "polygon"


# -- homogeneous-coordinate helpers (x, y, w) with w > 0, used internally ----


def _hom_lex_key(p: tuple[int, int, int]) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0], p[2]), Fraction(p[1], p[2]))


def _hom_lex_lt(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    d = a[0] * b[2] - b[0] * a[2]
    if d != 0:
        return d < 0
    return a[1] * b[2] - b[1] * a[2] < 0


def _hom_cross_sign(o: tuple[int, int, int], a: tuple[int, int, int], b: tuple[int, int, int]) -> int:
    # sign of (a - o) x (b - o); denominators are positive so they only scale.
    ax, ay = a[0] * o[2] - o[0] * a[2], a[1] * o[2] - o[1] * a[2]
    bx, by = b[0] * o[2] - o[0] * b[2], b[1] * o[2] - o[1] * b[2]
    v = ax * by - ay * bx
    return (v > 0) - (v < 0)


def _hom_normalize(p: tuple[int, int, int]) -> tuple[int, int, int]:
    x, y, w = p
    if w < 0:
        x, y, w = -x, -y, -w
    g = math.gcd(math.gcd(abs(x), abs(y)), w)
    if g > 1:
        x, y, w = x // g, y // g, w // g
    return (x, y, w)


def _hull_hom(points: Sequence[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Monotone-chain convex hull on normalized homogeneous points.

    Returns the hull CCW starting at the lexicographically smallest point;
    collinear non-extreme points are dropped.  Degenerate outputs have one or
    two entries.
    """
    pts = sorted(set(points), key=_hom_lex_key)
    if len(pts) <= 1:
        return pts
    lower: list[tuple[int, int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _hom_cross_sign(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _hom_cross_sign(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        return [pts[0], pts[-1]]  # collinear: keep the two extremes
    return lower[:-1] + upper[:-1]


def _primitive_pair(x: int, y: int) -> tuple[int, int]:
    g = math.gcd(abs(x), abs(y))
    return (x // g, y // g) if g else (0, 0)


def _hom_from_fractions(x: Fraction, y: Fraction) -> tuple[int, int, int]:
    den = (x.denominator * y.denominator) // math.gcd(x.denominator, y.denominator)
    return (x.numerator * (den // x.denominator), y.numerator * (den // y.denominator), den)


@dataclass(frozen=True)
class ConvexLatticePolygon:
    """Canonical convex region: vrep CCW from the lexicographic minimum.

    Two polygons describe the same region iff their vrep tuples are equal;
    hrep is carried along for face queries by index and is excluded from
    equality.  Use :func:`hull` or :func:`intersect_halfplanes` to build one.
    """

    vrep: tuple[RationalPoint, ...]
    dim: PolygonDim
    hrep: tuple[HalfPlane, ...] = field(default=(), compare=False)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def _from_hom_vertices(
        hom: Sequence[tuple[int, int, int]], hrep: tuple[HalfPlane, ...]
    ) -> "ConvexLatticePolygon":
        hull_pts = _hull_hom([_hom_normalize(p) for p in hom])
        verts = tuple(RationalPoint(x, y, w) for (x, y, w) in hull_pts)
        if not verts:
            dim = PolygonDim.EMPTY
        elif len(verts) == 1:
            dim = PolygonDim.POINT
        elif len(verts) == 2:
            dim = PolygonDim.SEGMENT
        else:
            dim = PolygonDim.POLYGON
        return ConvexLatticePolygon(verts, dim, hrep)

    @classmethod
    def empty(cls) -> "ConvexLatticePolygon":
        return cls((), PolygonDim.EMPTY, ())

    # -- basic queries -------------------------------------------------------

    def is_empty(self) -> bool:
        return self.dim is PolygonDim.EMPTY

    def has_lattice_vertices(self) -> bool:
        return all(v.den == 1 for v in self.vrep)

    def lattice_vertices(self) -> list[LatticeVector]:
        return [v.to_lattice() for v in self.vrep]

    def _edges(self) -> Iterator[tuple[RationalPoint, RationalPoint]]:
        if self.dim is PolygonDim.SEGMENT:
            yield (self.vrep[0], self.vrep[1])
        elif self.dim is PolygonDim.POLYGON:
            n = len(self.vrep)
            for i in range(n):
                yield (self.vrep[i], self.vrep[(i + 1) % n])

    def support_constraints(self) -> list[tuple[int, int, int, int]]:
        """Supporting half-planes as (nx, ny, num, den): nx*x + ny*y >= num/den.

        Prefers the stored integer hrep; otherwise derives constraints from
        the vertex list (offsets may then be non-integral rationals).
        """
        if self.hrep:
            return [(h.normal.x, h.normal.y, -h.offset, 1) for h in self.hrep]
        cons: list[tuple[int, int, int, int]] = []
        if self.dim is PolygonDim.POINT:
            p = self.vrep[0]
            cons.append((1, 0, p.x_num, p.den))
            cons.append((-1, 0, -p.x_num, p.den))
            cons.append((0, 1, p.y_num, p.den))
            cons.append((0, -1, -p.y_num, p.den))
            return cons
        for p, q in self._edges():
            dxf, dyf = q.x - p.x, q.y - p.y
            dx, dy = _primitive_pair(
                dxf.numerator * dyf.denominator, dyf.numerator * dxf.denominator
            )
            nx, ny = -dy, dx  # inward normal for a CCW edge
            bound = nx * p.x + ny * p.y  # Fraction
            cons.append((nx, ny, bound.numerator, bound.denominator))
            if self.dim is PolygonDim.SEGMENT:
                cons.append((-nx, -ny, -bound.numerator, bound.denominator))
                lo = dx * p.x + dy * p.y
                hi = dx * q.x + dy * q.y
                if lo > hi:
                    lo, hi = hi, lo
                cons.append((dx, dy, lo.numerator, lo.denominator))
                cons.append((-dx, -dy, -hi.numerator, hi.denominator))
        return cons

    def contains(self, p: RationalPoint | LatticeVector) -> bool:
        if isinstance(p, LatticeVector):
            p = RationalPoint.from_lattice(p)
        if self.dim is PolygonDim.EMPTY:
            return False
        if self.dim is PolygonDim.POINT:
            return self.vrep[0] == p
        hp = (p.x_num, p.y_num, p.den)
        if self.dim is PolygonDim.SEGMENT:
            a = (self.vrep[0].x_num, self.vrep[0].y_num, self.vrep[0].den)
            b = (self.vrep[1].x_num, self.vrep[1].y_num, self.vrep[1].den)
            if _hom_cross_sign(a, b, hp) != 0:
                return False
            lo, hi = (a, b) if _hom_lex_lt(a, b) else (b, a)
            return not (_hom_lex_lt(hp, lo) or _hom_lex_lt(hi, hp))
        n = len(self.vrep)
        for i in range(n):
            a = self.vrep[i]
            b = self.vrep[(i + 1) % n]
            if _hom_cross_sign((a.x_num, a.y_num, a.den), (b.x_num, b.y_num, b.den), hp) < 0:
                return False
        return True

    def contains_in_interior(self, p: RationalPoint | LatticeVector) -> bool:
        """Topological-interior membership; always False for dim < 2."""
        if isinstance(p, LatticeVector):
            p = RationalPoint.from_lattice(p)
        if self.dim is not PolygonDim.POLYGON:
            return False
        hp = (p.x_num, p.y_num, p.den)
        n = len(self.vrep)
        for i in range(n):
            a = self.vrep[i]
            b = self.vrep[(i + 1) % n]
            if _hom_cross_sign((a.x_num, a.y_num, a.den), (b.x_num, b.y_num, b.den), hp) <= 0:
                return False
        return True

    def contains_on_boundary(self, p: RationalPoint | LatticeVector) -> bool:
        return self.contains(p) and not self.contains_in_interior(p)

    def support_min(self, v: LatticeVector) -> Fraction:
        """min over the region of <u, v>; the region must be nonempty."""
        if self.is_empty():
            raise EmptyInputError("support of an empty region is undefined")
        return min(Fraction(v.x * p.x_num + v.y * p.y_num, p.den) for p in self.vrep)

    def support_max(self, v: LatticeVector) -> Fraction:
        if self.is_empty():
            raise EmptyInputError("support of an empty region is undefined")
        return max(Fraction(v.x * p.x_num + v.y * p.y_num, p.den) for p in self.vrep)

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if self.is_empty():
            raise EmptyInputError("empty region has no bounding box")
        xs = [p.x for p in self.vrep]
        ys = [p.y for p in self.vrep]
        return (min(xs), min(ys), max(xs), max(ys))

    def translate(self, t: LatticeVector) -> "ConvexLatticePolygon":
        verts = tuple(
            RationalPoint(p.x_num + t.x * p.den, p.y_num + t.y * p.den, p.den) for p in self.vrep
        )
        hrep = tuple(HalfPlane(h.normal, h.offset - h.normal.dot(t)) for h in self.hrep)
        return ConvexLatticePolygon(verts, self.dim, hrep)

    def reflect(self) -> "ConvexLatticePolygon":
        """The region { -u : u in P }, canonicalized."""
        hrep = tuple(HalfPlane(-h.normal, h.offset) for h in self.hrep)
        hom = [(-p.x_num, -p.y_num, p.den) for p in self.vrep]
        return ConvexLatticePolygon._from_hom_vertices(hom, hrep)

    def twice_area(self) -> Fraction:
        total = Fraction(0)
        for p, q in self._edges():
            total += p.x * q.y - p.y * q.x
        return total

    def __str__(self) -> str:
        return f"{self.dim.value}[{', '.join(str(v) for v in self.vrep)}]"


# -- construction ------------------------------------------------------------


def hull(points: Iterable[LatticeVector]) -> ConvexLatticePolygon:
    """Convex hull of lattice points, as a canonical polygon.

    The resulting hrep consists of the supporting half-planes of the hull
    (all integral since the vertices are lattice points).
    """
    pts = list(points)
    for p in pts:
        check_input_coord(p.x)
        check_input_coord(p.y)
    poly = ConvexLatticePolygon._from_hom_vertices([(p.x, p.y, 1) for p in pts], ())
    hrep = tuple(
        HalfPlane(LatticeVector(nx, ny), -num)
        for (nx, ny, num, den) in poly.support_constraints()
    )
    return ConvexLatticePolygon(poly.vrep, poly.dim, hrep)


def _directions_positively_span(normals: Sequence[LatticeVector]) -> bool:
    """True iff {u : <u,n> >= 0 for all n} = {0}, i.e. intersections are bounded."""
    dirs = list({n.as_tuple() for n in normals})
    if len(dirs) < 3:
        return False

    def half(d: tuple[int, int]) -> int:
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    def angle_lt(a: tuple[int, int], b: tuple[int, int]) -> bool:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha < hb
        return a[0] * b[1] - a[1] * b[0] > 0

    ordered: list[tuple[int, int]] = []
    for d in dirs:  # insertion sort via the exact comparator; lists are tiny
        i = 0
        while i < len(ordered) and angle_lt(ordered[i], d):
            i += 1
        ordered.insert(i, d)
    m = len(ordered)
    for i in range(m):
        a = ordered[i]
        b = ordered[(i + 1) % m]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            return False
    return True


def _feasible(planes: Sequence[HalfPlane]) -> bool:
    """Exact emptiness test by eliminating x, then checking the y interval."""
    lows: list[tuple[Fraction, Fraction]] = []  # x >= s*y + t
    ups: list[tuple[Fraction, Fraction]] = []  # x <= s*y + t
    ylo: Fraction | None = None
    yhi: Fraction | None = None

    def tighten(a: Fraction, b: Fraction) -> bool:
        # require a*y + b >= 0 for some y
        nonlocal ylo, yhi
        if a == 0:
            return b >= 0
        bound = -b / a
        if a > 0:
            if ylo is None or bound > ylo:
                ylo = bound
        else:
            if yhi is None or bound < yhi:
                yhi = bound
        return True

    for h in planes:
        nx, ny, c = h.normal.x, h.normal.y, h.offset
        if nx == 0:
            if not tighten(Fraction(ny), Fraction(c)):
                return False
        elif nx > 0:
            lows.append((Fraction(-ny, nx), Fraction(-c, nx)))
        else:
            ups.append((Fraction(-ny, nx), Fraction(-c, nx)))
    for ls, lt in lows:
        for us, ut in ups:
            if not tighten(us - ls, ut - lt):
                return False
    return ylo is None or yhi is None or ylo <= yhi


def intersect_halfplanes(planes: Sequence[HalfPlane]) -> ConvexLatticePolygon:
    """Intersection of closed half-planes as a canonical polygon.

    The input hrep is stored verbatim (including redundant planes) so faces
    can later be queried by index.  An empty intersection yields the empty
    polygon; an unbounded one raises :class:`UnboundedRegionError`.
    """
    planes = list(planes)
    if not planes:
        raise PreconditionError("need at least one half-plane")
    data = [(h.normal.x, h.normal.y, h.offset) for h in planes]
    n = len(planes)
    candidates: list[tuple[int, int, int]] = []
    for i in range(n):
        nix, niy, ci = data[i]
        for j in range(i + 1, n):
            njx, njy, cj = data[j]
            det = nix * njy - niy * njx
            if det == 0:
                continue
            x = -ci * njy + cj * niy
            y = -cj * nix + ci * njx
            w = det
            if w < 0:
                x, y, w = -x, -y, -w
            ok = True
            for nkx, nky, ck in data:
                if nkx * x + nky * y < -ck * w:
                    ok = False
                    break
            if ok:
                candidates.append((x, y, w))
    if not candidates:
        if _feasible(planes):
            raise UnboundedRegionError("intersection is nonempty but has no vertex")
        return ConvexLatticePolygon((), PolygonDim.EMPTY, tuple(planes))
    if not _directions_positively_span([h.normal for h in planes]):
        raise UnboundedRegionError("half-plane normals do not positively span the plane")
    return ConvexLatticePolygon._from_hom_vertices(candidates, tuple(planes))


# -- lattice-point machinery ---------------------------------------------------


def lattice_points(poly: ConvexLatticePolygon) -> list[LatticeVector]:
    """All lattice points of a bounded region, sorted lexicographically.

    Row sweep: for each integer y between the vertical extremes, the x range
    is pinned down by exact ceilings/floors of the supporting constraints.
    """
    return list(_lattice_points_cached(poly))


@lru_cache(maxsize=65536)
def _lattice_points_cached(poly: ConvexLatticePolygon) -> tuple[LatticeVector, ...]:
    if poly.is_empty():
        return ()
    if poly.dim is PolygonDim.POINT:
        v = poly.vrep[0]
        return (v.to_lattice(),) if v.den == 1 else ()
    _, ymin, _, ymax = poly.bounding_box()
    cons = poly.support_constraints()
    out: list[LatticeVector] = []
    for y in range(math.ceil(ymin), math.floor(ymax) + 1):
        xlo: int | None = None
        xhi: int | None = None
        row_ok = True
        for nx, ny, num, den in cons:
            rhs = num - ny * y * den  # nx*x*den >= rhs
            if nx == 0:
                if rhs > 0:
                    row_ok = False
                    break
            elif nx > 0:
                b = ceil_div(rhs, nx * den)
                if xlo is None or b > xlo:
                    xlo = b
            else:
                b = floor_div(-rhs, -nx * den)
                if xhi is None or b < xhi:
                    xhi = b
        if not row_ok:
            continue
        if xlo is None or xhi is None:
            raise UnboundedRegionError("row sweep hit an unbounded row")
        for x in range(xlo, xhi + 1):
            out.append(LatticeVector(x, y))
    out.sort()
    return tuple(out)


def lattice_point_count(poly: ConvexLatticePolygon) -> int:
    return len(lattice_points(poly))


def pick_count(poly: ConvexLatticePolygon) -> int:
    """Lattice-point count via Pick's theorem: Area + B/2 + 1.

    Independent of the row sweep; requires lattice vertices.
    """
    if poly.is_empty():
        raise PreconditionError("pick_count requires a nonempty polygon")
    if not poly.has_lattice_vertices():
        raise PreconditionError("pick_count requires lattice vertices")
    verts = poly.lattice_vertices()
    if poly.dim is PolygonDim.POINT:
        return 1
    if poly.dim is PolygonDim.SEGMENT:
        d = verts[1] - verts[0]
        return math.gcd(abs(d.x), abs(d.y)) + 1
    twice_area = 0
    boundary = 0
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        twice_area += p.x * q.y - p.y * q.x
        boundary += math.gcd(abs(q.x - p.x), abs(q.y - p.y))
    assert twice_area > 0 and (twice_area + boundary) % 2 == 0
    return (twice_area + boundary) // 2 + 1


class FaceKind(Enum):
    EMPTY = "empty"
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class Face:
    """Intersection of a polygon with a line: nothing, one point, or a segment."""

    kind: FaceKind
    endpoints: tuple[RationalPoint, ...]

    @classmethod
    def empty(cls) -> "Face":
        return cls(FaceKind.EMPTY, ())

    def is_empty(self) -> bool:
        return self.kind is FaceKind.EMPTY

    def lattice_count(self) -> int:
        """Number of lattice points on the face."""
        if self.kind is FaceKind.EMPTY:
            return 0
        if self.kind is FaceKind.VERTEX:
            return 1 if self.endpoints[0].den == 1 else 0
        a, b = self.endpoints
        if a.den == 1 and b.den == 1:
            dx, dy = b.x_num - a.x_num, b.y_num - a.y_num
            return math.gcd(abs(dx), abs(dy)) + 1
        seg = ConvexLatticePolygon((a, b), PolygonDim.SEGMENT, ())
        return len(lattice_points(seg))

    def sum_with(self, other: "Face") -> "Face":
        """Minkowski sum of two faces (face additivity lives at this level)."""
        if self.is_empty() or other.is_empty():
            return Face.empty()
        hom = [
            (p.x_num * q.den + q.x_num * p.den, p.y_num * q.den + q.y_num * p.den, p.den * q.den)
            for p in self.endpoints
            for q in other.endpoints
        ]
        pts = _hull_hom([_hom_normalize(h) for h in hom])
        eps = tuple(RationalPoint(x, y, w) for (x, y, w) in pts)
        kind = FaceKind.VERTEX if len(eps) == 1 else FaceKind.EDGE
        return Face(kind, eps)


def face_in_direction(poly: ConvexLatticePolygon, v: LatticeVector, c: int) -> Face:
    """The set P intersect { u : <u, v> = -c }, exactly.

    Empty when the line misses P; a single (possibly rational) point when it
    touches a vertex or crosses at one point; otherwise the chord segment.
    """
    if not v.is_primitive():
        raise PreconditionError("direction must be primitive")
    if poly.is_empty():
        return Face.empty()

    def level(p: RationalPoint) -> int:
        # sign of <p, v> + c, scaled by the positive denominator
        return v.x * p.x_num + v.y * p.y_num + c * p.den

    verts = poly.vrep
    if poly.dim is PolygonDim.POINT:
        if level(verts[0]) == 0:
            return Face(FaceKind.VERTEX, (verts[0],))
        return Face.empty()
    pts: list[tuple[int, int, int]] = []
    for a, b in poly._edges():
        la, lb = level(a), level(b)
        if la == 0:
            pts.append((a.x_num, a.y_num, a.den))
        if lb == 0:
            pts.append((b.x_num, b.y_num, b.den))
        if la * lb < 0:
            la_f = Fraction(la, a.den)
            lb_f = Fraction(lb, b.den)
            t = la_f / (la_f - lb_f)
            pts.append(_hom_from_fractions(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
    uniq = sorted({_hom_normalize(p) for p in pts}, key=_hom_lex_key)
    if not uniq:
        return Face.empty()
    if len(uniq) == 1:
        return Face(FaceKind.VERTEX, (RationalPoint(*uniq[0]),))
    return Face(FaceKind.EDGE, (RationalPoint(*uniq[0]), RationalPoint(*uniq[-1])))


# -- Minkowski sums ------------------------------------------------------------


def _edge_vectors(
    poly: ConvexLatticePolygon,
) -> tuple[RationalPoint, list[tuple[Fraction, Fraction]]]:
    """Start vertex (lowest, then leftmost) and CCW edge vectors from it."""
    verts = list(poly.vrep)
    start = min(range(len(verts)), key=lambda i: (verts[i].y, verts[i].x))
    if poly.dim is PolygonDim.SEGMENT:
        a, b = verts[start], verts[1 - start]
        d = (b.x - a.x, b.y - a.y)
        return verts[start], [d, (-d[0], -d[1])]
    n = len(verts)
    order = [verts[(start + i) % n] for i in range(n)]
    edges = []
    for i in range(n):
        p, q = order[i], order[(i + 1) % n]
        edges.append((q.x - p.x, q.y - p.y))
    return verts[start], edges


def _angle_lt(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> bool:
    def half(d: tuple[Fraction, Fraction]) -> int:
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha < hb
    return a[0] * b[1] - a[1] * b[0] > 0


def minkowski_sum(a: ConvexLatticePolygon, b: ConvexLatticePolygon) -> ConvexLatticePolygon:
    """A + B by merging edge vectors in angular order.

    Degenerate summands reduce to translations.  Always equals the hull of
    pairwise vertex sums; that identity is checked in tests, not here.
    """
    if a.is_empty() or b.is_empty():
        raise EmptyInputError("minkowski_sum requires nonempty polygons")
    if a.dim is PolygonDim.POINT or b.dim is PolygonDim.POINT:
        pt, other = (a.vrep[0], b) if a.dim is PolygonDim.POINT else (b.vrep[0], a)
        hom = [
            (
                p.x_num * pt.den + pt.x_num * p.den,
                p.y_num * pt.den + pt.y_num * p.den,
                p.den * pt.den,
            )
            for p in other.vrep
        ]
        return ConvexLatticePolygon._from_hom_vertices(hom, ())
    sa, ea = _edge_vectors(a)
    sb, eb = _edge_vectors(b)
    merged: list[tuple[Fraction, Fraction]] = []
    i = j = 0
    while i < len(ea) and j < len(eb):
        if _angle_lt(ea[i], eb[j]):
            merged.append(ea[i])
            i += 1
        elif _angle_lt(eb[j], ea[i]):
            merged.append(eb[j])
            j += 1
        else:  # parallel, same direction: fuse into one edge
            merged.append((ea[i][0] + eb[j][0], ea[i][1] + eb[j][1]))
            i += 1
            j += 1
    merged.extend(ea[i:])
    merged.extend(eb[j:])
    x = sa.x + sb.x
    y = sa.y + sb.y
    hom = [_hom_from_fractions(x, y)]
    for dx, dy in merged[:-1]:
        x, y = x + dx, y + dy
        hom.append(_hom_from_fractions(x, y))
    return ConvexLatticePolygon._from_hom_vertices(hom, ())


# -- the elementary interval decomposition --------------------------------------


def decompose_interval(
    i1: tuple[Fraction | int, Fraction | int],
    i2: tuple[int, int],
    z: int,
) -> tuple[int, int]:
    """Split an integer z in I1 + I2 as c1 + c2 with c1 in I1, c2 in I2.

    I1 is a closed rational interval that must contain an integer; I2 has
    integer endpoints.  Deterministic tie-break: smallest feasible c1.
    """
    a1, b1 = Fraction(i1[0]), Fraction(i1[1])
    a2, b2 = i2
    if not (isinstance(a2, int) and isinstance(b2, int)):
        raise PreconditionError("I2 must have integer endpoints")
    if a1 > b1 or a2 > b2:
        raise PreconditionError("intervals must be nonempty")
    lo1, hi1 = math.ceil(a1), math.floor(b1)
    if lo1 > hi1:
        raise NoIntegerInIntervalError(f"[{a1}, {b1}] contains no integer")
    if not (a1 + a2 <= z <= b1 + b2):
        raise DecompositionRangeError(f"{z} outside [{a1 + a2}, {b1 + b2}]")
    c1 = max(lo1, z - b2)
    assert c1 <= min(hi1, z - a2)
    return c1, z - c1
