"""Surjectivity of the section multiplication map, with certificates.

A lattice point p of the sum polygon is certified by a witness q1 + q2 = p
with q1, q2 lattice points of the two factor polygons.  Witnesses come from
two independent routes: an exhaustive scan (the oracle) and a structured
algorithm that mirrors the constructive proof (vertex analysis of the fiber
polygon, reduction to a corner triangle in an adapted lattice basis, then
horizontal/vertical interval splits or a homothetic-triangle split).  The
structured route keeps a mandatory fallback and records when it was used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import (
    BudgetExceededError,
    DecompositionRangeError,
    EmptyInputError,
    PreconditionError,
    TheoremViolationError,
)
from .lattice import (
    ConvexLatticePolygon,
    FaceKind,
    HalfPlane,
    LatticeVector,
    PolygonDim,
    RationalPoint,
    _hom_lex_lt,
    decompose_interval,
    face_in_direction,
    hull,
    intersect_halfplanes,
    lattice_points,
    minkowski_sum,
)
from .surface import Fan, PositivityClass, TorusDivisor, classify, polygon_of

#: Pairwise-sum scans refuse to touch more than this many pairs.
PAIR_BUDGET = 10**7


class DecompositionPath(Enum):
    INTERIOR_VERTEX = "interior_vertex"
    BOUNDARY_LATTICE = "boundary_lattice"
    TRIANGLE_REGION_A = "triangle_region_A"
    TRIANGLE_REGION_B = "triangle_region_B"
    TRIANGLE_REGION_C = "triangle_region_C"
    FALLBACK_SEARCH = "fallback_search"


@dataclass(frozen=True)
class DecompositionWitness:
    """Certificate that p splits as q1 + q2 with q1, q2 in the factor polygons."""

    p: LatticeVector
    q1: LatticeVector
    q2: LatticeVector
    path: DecompositionPath

    def __post_init__(self) -> None:
        if self.q1 + self.q2 != self.p:
            raise TheoremViolationError(f"witness does not sum: {self.q1} + {self.q2} != {self.p}")


@dataclass(frozen=True)
class SurjectivityReport:
    total_points: int
    decomposed: int
    witnesses: tuple[DecompositionWitness, ...]
    surjective: bool
    structured_fallbacks: int


@dataclass(frozen=True)
class CokernelReport:
    h0_D: int
    h0_E: int
    h0_sum: int
    sumset_size: int
    coker_dim: int
    missing_points: tuple[LatticeVector, ...]


@dataclass(frozen=True)
class TriangleReduction:
    """Corner triangle (or the edge itself) spanned by an edge's endpoints.

    c holds the minimal integer offsets supporting both endpoints; the
    triangle they cut out sits inside the original polygon with the endpoints
    among its vertices.  For a two-dimensional reduction, corner_ray_index is
    the 1-based ray k such that rays k and k+1 support the two legs, and legs
    are the leg lengths in the basis dual to those rays.
    """

    sigma_endpoints: tuple[LatticeVector, LatticeVector]
    c: tuple[int, ...]
    triangle: ConvexLatticePolygon
    legs: tuple[int, int] | None
    corner_ray_index: int | None


def _make_witness(
    p_d: ConvexLatticePolygon,
    p_e: ConvexLatticePolygon,
    p: LatticeVector,
    q2: LatticeVector,
    path: DecompositionPath,
) -> DecompositionWitness:
    q1 = p - q2
    if not p_d.contains(q1):
        raise TheoremViolationError(f"witness check failed: {q1} not in the first polygon")
    if not p_e.contains(q2):
        raise TheoremViolationError(f"witness check failed: {q2} not in the second polygon")
    return DecompositionWitness(p=p, q1=q1, q2=q2, path=path)


def _contains_factory(poly: ConvexLatticePolygon) -> Callable[[int, int], bool]:
    """Fast lattice-point membership from the support constraints."""
    if poly.is_empty():
        return lambda x, y: False
    cons = poly.support_constraints()

    def inside(x: int, y: int) -> bool:
        for nx, ny, num, den in cons:
            if (nx * x + ny * y) * den < num:
                return False
        return True

    return inside


def decompose_bruteforce(
    p_d: ConvexLatticePolygon,
    p_e: ConvexLatticePolygon,
    p: LatticeVector,
) -> DecompositionWitness | None:
    """Exhaustive witness search: lexicographically smallest q1 that works.

    Returns None when no lattice decomposition exists, whether p narrowly
    misses the sumset or lies outside the sum region entirely.
    """
    if p_d.is_empty() or p_e.is_empty():
        raise EmptyInputError("decompose_bruteforce requires nonempty polygons")
    inside_e = _contains_factory(p_e)
    for q1 in lattice_points(p_d):
        if inside_e(p.x - q1.x, p.y - q1.y):
            return DecompositionWitness(
                p=p, q1=q1, q2=p - q1, path=DecompositionPath.FALLBACK_SEARCH
            )
    return None


# -- triangle reduction ---------------------------------------------------------


def _primitive(v: LatticeVector) -> LatticeVector:
    g = math.gcd(abs(v.x), abs(v.y))
    return LatticeVector(v.x // g, v.y // g)


def _frame_data(
    fan: Fan, triangle: ConvexLatticePolygon, m1: LatticeVector, m2: LatticeVector
) -> tuple[int, int, int]:
    """(k0, a, b): 0-based corner ray index and leg lengths of the triangle.

    The two edges not spanned by {m1, m2} must be supported by consecutive
    fan rays v_k, v_{k+1}; the legs are measured in the dual basis.
    """
    if not triangle.has_lattice_vertices():
        raise TheoremViolationError("reduced triangle has a non-lattice vertex on a smooth fan")
    verts = triangle.lattice_vertices()
    others = [w for w in verts if w not in (m1, m2)]
    if len(verts) != 3 or len(others) != 1:
        raise TheoremViolationError("reduction did not produce a triangle on the edge endpoints")
    t = others[0]
    idx = verts.index(t)
    prev_v = verts[(idx - 1) % 3]
    next_v = verts[(idx + 1) % 3]
    d_in = t - prev_v
    d_out = next_v - t
    n_in = _primitive(LatticeVector(-d_in.y, d_in.x))
    n_out = _primitive(LatticeVector(-d_out.y, d_out.x))
    i_in = fan.index_of(n_in)
    i_out = fan.index_of(n_out)
    if i_in is None or i_out is None or (i_in + 1) % fan.n != i_out:
        raise TheoremViolationError(
            "triangle legs are not supported by consecutive fan rays"
        )
    vk, vk1 = fan.rays[i_in], fan.rays[i_out]
    # dual-basis coordinates relative to the right-angle vertex t
    a = vk.dot(next_v) - vk.dot(t)
    b = vk1.dot(prev_v) - vk1.dot(t)
    if a <= 0 or b <= 0:
        raise TheoremViolationError("adapted frame produced non-positive legs")
    return i_in, a, b


def triangle_reduce(
    fan: Fan, e: TorusDivisor, q: RationalPoint, edge_index: int
) -> TriangleReduction:
    """Cut the polygon of a globally generated divisor down to an edge's corner.

    q must lie strictly inside edge sigma_{edge_index} (1-based, by ray).  The
    minimal offsets supporting the edge's endpoints carve out either the edge
    itself or a triangle inside the polygon whose other two edges sit on
    consecutive rays.
    """
    if not classify(fan, e).is_globally_generated():
        raise PreconditionError("triangle_reduce requires a globally generated divisor")
    if not (1 <= edge_index <= fan.n):
        raise PreconditionError(f"edge index must be in [1, {fan.n}]")
    p_e = polygon_of(fan, e)
    j = edge_index - 1
    face = face_in_direction(p_e, fan.rays[j], e.coeffs[j])
    if face.kind is not FaceKind.EDGE:
        raise PreconditionError(f"sigma_{edge_index} is not a nondegenerate edge")
    end_a, end_b = face.endpoints
    if end_a.den != 1 or end_b.den != 1:
        raise PreconditionError("edge endpoints are not lattice points")
    m1, m2 = end_a.to_lattice(), end_b.to_lattice()
    seg = ConvexLatticePolygon((end_a, end_b), PolygonDim.SEGMENT, ())
    if not seg.contains(q) or q == end_a or q == end_b:
        raise PreconditionError(f"{q} is not interior to edge sigma_{edge_index}")
    c = tuple(max(-m1.dot(v), -m2.dot(v)) for v in fan.rays)
    triangle = intersect_halfplanes([HalfPlane(v, ci) for v, ci in zip(fan.rays, c)])
    for w in triangle.vrep:
        if not p_e.contains(w):
            raise TheoremViolationError("reduced region escapes the original polygon")
    for m in (end_a, end_b):
        if m not in triangle.vrep:
            raise TheoremViolationError("edge endpoint is not a vertex of the reduction")
    legs: tuple[int, int] | None = None
    corner: int | None = None
    if triangle.dim is PolygonDim.POLYGON:
        k0, a, b = _frame_data(fan, triangle, m1, m2)
        legs = (a, b)
        corner = k0 + 1
    return TriangleReduction(
        sigma_endpoints=(m1, m2), c=c, triangle=triangle, legs=legs, corner_ray_index=corner
    )


# -- homothetic triangles -------------------------------------------------------


def _primitive_shape(poly: ConvexLatticePolygon) -> ConvexLatticePolygon:
    """The primitive triangle that poly is a translated multiple of."""
    verts = poly.lattice_vertices()
    w0 = verts[0]
    deltas = [w - w0 for w in verts[1:]]
    k = 0
    for d in deltas:
        k = math.gcd(k, math.gcd(abs(d.x), abs(d.y)))
    return hull([LatticeVector(0, 0)] + [LatticeVector(d.x // k, d.y // k) for d in deltas])


def decompose_homothetic_triangles(
    t1: ConvexLatticePolygon, t2: ConvexLatticePolygon, p: LatticeVector
) -> tuple[LatticeVector, LatticeVector]:
    """Split p across two translates of multiples of one lattice triangle.

    Either triangle may degenerate to a point (the zero multiple).  Tie-break
    is the lexicographically smallest q1.  Existence is guaranteed for
    homothetic lattice triangles, so a failed scan for an in-range p is a bug.
    """
    for t in (t1, t2):
        if t.is_empty():
            raise EmptyInputError("homothetic decomposition requires nonempty inputs")
        if not t.has_lattice_vertices():
            raise PreconditionError("homothetic decomposition requires lattice triangles")
        if t.dim is PolygonDim.SEGMENT:
            raise PreconditionError("a segment is not a multiple of a triangle")
    if t1.dim is PolygonDim.POLYGON and t2.dim is PolygonDim.POLYGON:
        if len(t1.vrep) != 3 or len(t2.vrep) != 3:
            raise PreconditionError("inputs must be triangles")
        if _primitive_shape(t1) != _primitive_shape(t2):
            raise PreconditionError("triangles are not translates of multiples of one triangle")
    if not minkowski_sum(t1, t2).contains(p):
        raise DecompositionRangeError(f"{p} lies outside the sum of the triangles")
    inside_t2 = _contains_factory(t2)
    for q1 in lattice_points(t1):
        if inside_t2(p.x - q1.x, p.y - q1.y):
            return q1, p - q1
    raise TheoremViolationError("no lattice split of homothetic triangles; this is a bug")


# -- the structured algorithm ---------------------------------------------------


def _fiber_polygon(
    p_d: ConvexLatticePolygon, p_e: ConvexLatticePolygon, p: LatticeVector
) -> ConvexLatticePolygon:
    """Q2 = P_E intersect (p - P_D), via exact half-plane intersection."""
    planes = list(p_e.hrep)
    for h in p_d.hrep:
        planes.append(HalfPlane(-h.normal, h.normal.dot(p) + h.offset))
    return intersect_halfplanes(planes)


class _FiberEngine:
    """Vertex and lattice analysis of P_E intersect (p - P_D) on one instance.

    All constraints have the fixed normals {v_i} and {-v_i}; only the
    reflected offsets move with p, so the pairwise intersection structure is
    precomputed once and each point costs plain integer arithmetic.  Results
    agree with the generic half-plane intersection route (tested).
    """

    def __init__(self, fan: Fan, d: TorusDivisor, e: TorusDivisor):
        rays = fan.rays
        self.n = fan.n
        self.norms = [(v.x, v.y) for v in rays] + [(-v.x, -v.y) for v in rays]
        self.e_offsets = list(e.coeffs)
        self.d_coeffs = list(d.coeffs)
        pairs = []
        m = len(self.norms)
        for k in range(m):
            kx, ky = self.norms[k]
            for l in range(k + 1, m):
                lx, ly = self.norms[l]
                det = kx * ly - ky * lx
                if det != 0:
                    pairs.append((k, l, det))
        self.pairs = pairs

    def offsets_at(self, px: int, py: int) -> list[int]:
        offs = list(self.e_offsets)
        for i in range(self.n):
            nx, ny = self.norms[i]
            offs.append(self.d_coeffs[i] + nx * px + ny * py)
        return offs

    def vertices_at(self, offs: list[int]) -> list[tuple[int, int, int]]:
        """Feasible pairwise intersections = the fiber's vertices, homogeneous."""
        norms = self.norms
        out = []
        for k, l, det in self.pairs:
            ck, cl = offs[k], offs[l]
            kx, ky = norms[k]
            lx, ly = norms[l]
            x = -ck * ly + cl * ky
            y = -cl * kx + ck * lx
            w = det
            if w < 0:
                x, y, w = -x, -y, -w
            feasible = True
            for m, (nx, ny) in enumerate(norms):
                if nx * x + ny * y < -offs[m] * w:
                    feasible = False
                    break
            if feasible:
                out.append((x, y, w))
        return out

    def lattice_points_at(
        self, verts: list[tuple[int, int, int]], offs: list[int]
    ) -> list[tuple[int, int]]:
        """Fiber lattice points in lexicographic order (column sweep)."""
        bx, bw = verts[0][0], verts[0][2]
        tx, tw = bx, bw
        for x, _, w in verts[1:]:
            if x * bw < bx * w:
                bx, bw = x, w
            if x * tw > tx * w:
                tx, tw = x, w
        xlo = -((-bx) // bw)
        xhi = tx // tw
        norms = self.norms
        out = []
        for x in range(xlo, xhi + 1):
            ylo = None
            yhi = None
            ok = True
            for (nx, ny), c in zip(norms, offs):
                rhs = -c - nx * x  # ny*y >= rhs
                if ny == 0:
                    if rhs > 0:
                        ok = False
                        break
                elif ny > 0:
                    b = -((-rhs) // ny)
                    if ylo is None or b > ylo:
                        ylo = b
                else:
                    b = (-rhs) // (-ny)
                    if yhi is None or b < yhi:
                        yhi = b
            if not ok or ylo is None or yhi is None:
                continue
            for y in range(ylo, yhi + 1):
                out.append((x, y))
        return out

    def tight_e_index(self, x: int, y: int, w: int = 1) -> int | None:
        """First E-constraint index tight at (x/w, y/w), or None."""
        for i in range(self.n):
            nx, ny = self.norms[i]
            if nx * x + ny * y == -self.e_offsets[i] * w:
                return i
        return None

    def interior_of_e(self, x: int, y: int, w: int) -> bool:
        for i in range(self.n):
            nx, ny = self.norms[i]
            if nx * x + ny * y <= -self.e_offsets[i] * w:
                return False
        return True


class _StructuredContext:
    """Precomputed data shared by all points of one (fan, D, E) instance."""

    def __init__(self, fan: Fan, d: TorusDivisor, e: TorusDivisor):
        if classify(fan, d) is not PositivityClass.AMPLE:
            raise PreconditionError("structured decomposition requires an ample first divisor")
        if not classify(fan, e).is_globally_generated():
            raise PreconditionError(
                "structured decomposition requires a globally generated second divisor"
            )
        self.fan = fan
        self.d = d
        self.e = e
        self.p_d = polygon_of(fan, d)
        self.p_e = polygon_of(fan, e)
        self.d_vertices = sorted(self.p_d.lattice_vertices())
        self.e_is_2d = self.p_e.dim is PolygonDim.POLYGON
        self.engine = _FiberEngine(fan, d, e)
        self.in_pd = _contains_factory(self.p_d)
        self.in_pe = _contains_factory(self.p_e)
        self._reductions: dict[int, TriangleReduction | None] = {}

    def reduction_for_edge(self, j0: int) -> TriangleReduction | None:
        """Triangle reduction for edge sigma_{j0+1}, cached per instance.

        The reduction only depends on the edge, not on q, so any interior
        point of the edge gives the same result.
        """
        if j0 not in self._reductions:
            face = face_in_direction(self.p_e, self.fan.rays[j0], self.e.coeffs[j0])
            red: TriangleReduction | None = None
            if face.kind is FaceKind.EDGE:
                a, b = face.endpoints
                mid = RationalPoint(
                    a.x_num * b.den + b.x_num * a.den,
                    a.y_num * b.den + b.y_num * a.den,
                    2 * a.den * b.den,
                )
                try:
                    red = triangle_reduce(self.fan, self.e, mid, j0 + 1)
                except (PreconditionError, TheoremViolationError):
                    red = None
            self._reductions[j0] = red
        return self._reductions[j0]


def _try_regions(
    ctx: _StructuredContext, red: TriangleReduction, p: LatticeVector
) -> DecompositionWitness | None:
    """Decompose p against P_D plus the reduced corner triangle.

    Works in the basis dual to the two consecutive rays supporting the
    triangle's legs, translated so the right-angle vertex (and the matching
    vertex of P_D) is the origin: the triangle becomes conv{(0,0),(a,0),(0,b)}
    and P_D sits in the first quadrant with vertex (0,0).
    """
    if red.legs is None or red.corner_ray_index is None:
        return None
    k0 = red.corner_ray_index - 1
    fan = ctx.fan
    vk, vk1 = fan.rays[k0], fan.ray(k0 + 1)
    a_leg, b_leg = red.legs
    ad, bd = ctx.d.coeffs[k0], ctx.d.coeffs[(k0 + 1) % fan.n]
    cp, cp1 = red.c[k0], red.c[(k0 + 1) % fan.n]

    pd_frame = hull(
        [LatticeVector(vk.dot(u) + ad, vk1.dot(u) + bd) for u in ctx.d_vertices]
    )
    origin = RationalPoint(0, 0)
    if origin not in pd_frame.vrep:
        return None  # the two rays do not share a vertex of P_D; frame unusable
    px = vk.dot(p) + ad + cp
    py = vk1.dot(p) + bd + cp1

    def from_frame(w: tuple[int, int], off0: int, off1: int) -> LatticeVector:
        r0, r1 = w[0] - off0, w[1] - off1
        return LatticeVector(vk1.y * r0 - vk.y * r1, -vk1.x * r0 + vk.x * r1)

    def emit(
        q1f: tuple[int, int], q2f: tuple[int, int], path: DecompositionPath
    ) -> DecompositionWitness:
        q2 = from_frame(q2f, cp, cp1)
        return _make_witness(ctx.p_d, ctx.p_e, p, q2, path)

    # horizontal strip: q2 on the base edge of the triangle
    chord = face_in_direction(pd_frame, LatticeVector(0, 1), -py)
    if not chord.is_empty():
        xs = [e.x for e in chord.endpoints]
        try:
            c1, c2 = decompose_interval((min(xs), max(xs)), (0, a_leg), px)
        except (PreconditionError, DecompositionRangeError):
            pass
        else:
            return emit((c1, py), (c2, 0), DecompositionPath.TRIANGLE_REGION_A)
    # vertical strip: q2 on the upright edge
    chord = face_in_direction(pd_frame, LatticeVector(1, 0), -px)
    if not chord.is_empty():
        ys = [e.y for e in chord.endpoints]
        try:
            c1, c2 = decompose_interval((min(ys), max(ys)), (0, b_leg), py)
        except (PreconditionError, DecompositionRangeError):
            pass
        else:
            return emit((px, c1), (0, c2), DecompositionPath.TRIANGLE_REGION_B)
    # corner homothets: q1 in a translated multiple of the triangle
    delta = hull([LatticeVector(0, 0), LatticeVector(a_leg, 0), LatticeVector(0, b_leg)])
    inside_pd = _contains_factory(pd_frame)
    _, _, xmax, ymax = pd_frame.bounding_box()
    for w in sorted(pd_frame.lattice_vertices()):
        c_hi = min((int(xmax) - w.x) // a_leg, (int(ymax) - w.y) // b_leg)
        c_best = 0
        for cc in range(c_hi, 0, -1):
            if inside_pd(w.x + cc * a_leg, w.y) and inside_pd(w.x, w.y + cc * b_leg):
                c_best = cc
                break
        rx, ry = px - w.x, py - w.y
        if rx < 0 or ry < 0 or b_leg * rx + a_leg * ry > (c_best + 1) * a_leg * b_leg:
            continue
        t1 = hull(
            [w, LatticeVector(w.x + c_best * a_leg, w.y), LatticeVector(w.x, w.y + c_best * b_leg)]
        )
        try:
            q1f, q2f = decompose_homothetic_triangles(t1, delta, LatticeVector(px, py))
        except (PreconditionError, DecompositionRangeError):
            continue
        return emit(q1f.as_tuple(), q2f.as_tuple(), DecompositionPath.TRIANGLE_REGION_C)
    return None


def _context_witness(
    ctx: _StructuredContext, p: LatticeVector, q2x: int, q2y: int, path: DecompositionPath
) -> DecompositionWitness:
    if not ctx.in_pd(p.x - q2x, p.y - q2y) or not ctx.in_pe(q2x, q2y):
        raise TheoremViolationError(f"witness check failed at {p}")
    q2 = LatticeVector(q2x, q2y)
    return DecompositionWitness(p=p, q1=p - q2, q2=q2, path=path)


def _decompose_structured_in_context(
    ctx: _StructuredContext, p: LatticeVector
) -> DecompositionWitness:
    engine = ctx.engine
    offs = engine.offsets_at(p.x, p.y)
    verts = engine.vertices_at(offs)
    if not verts:
        raise DecompositionRangeError(f"{p} lies outside the sum polygon")
    # (2) a vertex of the fiber interior to P_E forces a vertex of P_D
    if ctx.e_is_2d:
        v0 = verts[0]
        for v in verts[1:]:
            if _hom_lex_lt(v, v0):
                v0 = v
        x, y, w = v0
        if x % w == 0 and y % w == 0 and engine.interior_of_e(x, y, w):
            return _context_witness(
                ctx, p, x // w, y // w, DecompositionPath.INTERIOR_VERTEX
            )
    # (3) any lattice point of the fiber on the boundary of P_E
    fiber_points = engine.lattice_points_at(verts, offs)
    for zx, zy in fiber_points:
        if engine.tight_e_index(zx, zy) is not None:
            return _context_witness(ctx, p, zx, zy, DecompositionPath.BOUNDARY_LATTICE)
    # (4)-(5) boundary point interior to an edge: reduce and split by regions
    if ctx.e_is_2d:
        seen: set[tuple[int, int, int]] = set()
        for raw in verts:
            g = math.gcd(math.gcd(abs(raw[0]), abs(raw[1])), raw[2])
            v = (raw[0] // g, raw[1] // g, raw[2] // g)
            if v[2] == 1 or v in seen:
                continue  # lattice vertices were handled by step (3)
            seen.add(v)
            j0 = engine.tight_e_index(*v)
            if j0 is None:
                continue  # fiber vertex interior to P_E
            red = ctx.reduction_for_edge(j0)
            if red is None or red.triangle.dim is not PolygonDim.POLYGON:
                continue  # a segment reduction adds nothing beyond step (3)
            witness = _try_regions(ctx, red, p)
            if witness is not None:
                return witness
    # (6) mandatory fallback: exhaustive scan restricted to the fiber
    if fiber_points:
        zx, zy = fiber_points[0]
        return _context_witness(ctx, p, zx, zy, DecompositionPath.FALLBACK_SEARCH)
    raise TheoremViolationError(
        f"no decomposition for {p} under ample x globally generated hypotheses"
    )


def decompose_structured(
    fan: Fan, d: TorusDivisor, e: TorusDivisor, p: LatticeVector
) -> DecompositionWitness:
    """Certified decomposition of p following the constructive proof.

    Requires d ample and e globally generated; p must be a lattice point of
    the sum polygon.  Always returns a verified witness (or raises
    TheoremViolationError, which would indicate an implementation bug).
    """
    ctx = _StructuredContext(fan, d, e)
    return _decompose_structured_in_context(ctx, p)


# -- reports ----------------------------------------------------------------------


def _brute_witness_map(
    p_d: ConvexLatticePolygon,
    p_e: ConvexLatticePolygon,
    pair_budget: int,
) -> dict[tuple[int, int], DecompositionWitness]:
    """All decomposable sums as a hash map keyed by p, smallest q1 kept."""
    s_d = lattice_points(p_d)
    s_e = lattice_points(p_e)
    if len(s_d) * len(s_e) > pair_budget:
        raise BudgetExceededError(
            f"{len(s_d)} x {len(s_e)} pairwise sums exceed the budget of {pair_budget}"
        )
    out: dict[tuple[int, int], DecompositionWitness] = {}
    for q1 in s_d:  # ascending, so the first writer has the smallest q1
        for q2 in s_e:
            key = (q1.x + q2.x, q1.y + q2.y)
            if key not in out:
                out[key] = DecompositionWitness(
                    p=LatticeVector(*key), q1=q1, q2=q2, path=DecompositionPath.FALLBACK_SEARCH
                )
    return out


def check_surjectivity(
    fan: Fan,
    d: TorusDivisor,
    e: TorusDivisor,
    mode: str = "both",
    pair_budget: int = PAIR_BUDGET,
) -> SurjectivityReport:
    """Decide surjectivity over every lattice point of the sum polygon.

    mode "brute" accepts any divisors with sections; "structured" and "both"
    require d ample and e globally generated.  In mode "both" the two routes
    must agree on existence for every point.
    """
    if mode not in ("structured", "brute", "both"):
        raise PreconditionError(f"unknown mode {mode!r}")
    p_d = polygon_of(fan, d)
    p_e = polygon_of(fan, e)
    if mode == "brute" and (not lattice_points(p_d) or not lattice_points(p_e)):
        raise PreconditionError("brute mode requires sections on both factors")
    points = lattice_points(polygon_of(fan, d + e))
    ctx = _StructuredContext(fan, d, e) if mode in ("structured", "both") else None
    brute = (
        _brute_witness_map(p_d, p_e, pair_budget) if mode in ("brute", "both") else None
    )
    witnesses: list[DecompositionWitness] = []
    for p in points:
        if ctx is not None:
            witness = _decompose_structured_in_context(ctx, p)
            if brute is not None and p.as_tuple() not in brute:
                raise TheoremViolationError(
                    f"structured route decomposed {p} but the exhaustive oracle did not"
                )
            witnesses.append(witness)
        else:
            assert brute is not None
            found = brute.get(p.as_tuple())
            if found is not None:
                witnesses.append(found)
    decomposed = len(witnesses)
    return SurjectivityReport(
        total_points=len(points),
        decomposed=decomposed,
        witnesses=tuple(witnesses),
        surjective=decomposed == len(points),
        structured_fallbacks=sum(
            1 for w in witnesses if w.path is DecompositionPath.FALLBACK_SEARCH
        ),
    )


def cokernel_dim(
    fan: Fan,
    d: TorusDivisor,
    e: TorusDivisor,
    pair_budget: int = PAIR_BUDGET,
) -> CokernelReport:
    """Count the lattice points of the sum polygon missed by the sumset.

    Both divisors must have sections.  Missing points are reported sorted;
    the sumset size is derived from them since every pairwise sum lands in
    the sum polygon.
    """
    s_d = lattice_points(polygon_of(fan, d))
    s_e = lattice_points(polygon_of(fan, e))
    if not s_d or not s_e:
        raise PreconditionError("cokernel requires sections on both factors")
    points = lattice_points(polygon_of(fan, d + e))
    inner, other_poly = (
        (s_d, polygon_of(fan, e)) if len(s_d) <= len(s_e) else (s_e, polygon_of(fan, d))
    )
    if len(points) * len(inner) > pair_budget:
        raise BudgetExceededError(
            f"{len(points)} x {len(inner)} membership tests exceed the budget of {pair_budget}"
        )
    inside = _contains_factory(other_poly)
    missing = [
        p
        for p in points
        if not any(inside(p.x - q.x, p.y - q.y) for q in inner)
    ]
    return CokernelReport(
        h0_D=len(s_d),
        h0_E=len(s_e),
        h0_sum=len(points),
        sumset_size=len(points) - len(missing),
        coker_dim=len(missing),
        missing_points=tuple(missing),
    )
