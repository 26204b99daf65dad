"""Fans of smooth projective toric surfaces and torus-invariant divisors.

A fan is a cyclically ordered list of primitive rays going once CCW around
the origin with det(v_i, v_{i+1}) = 1 throughout; a divisor is an integer
coefficient per ray.  The polygon of a divisor collects the sections, and
positivity (globally generated / ample) is read off its faces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

from .errors import (
    DuplicateRayError,
    FanSizeError,
    NonCompleteFanError,
    NonPrimitiveRayError,
    NonSmoothFanError,
    PreconditionError,
    SamplingBudgetError,
)
from .lattice import (
    ConvexLatticePolygon,
    FaceKind,
    HalfPlane,
    LatticeVector,
    check_input_coord,
    face_in_direction,
    intersect_halfplanes,
    lattice_points,
)

#: Generated fans refuse to grow beyond this many rays.
MAX_GENERATED_RAYS = 12

#: random_divisor gives up after this many rejected draws.
SAMPLING_BUDGET = 10**5


@dataclass(frozen=True)
class Fan:
    """A validated complete smooth fan; rays are CCW, indices cyclic.

    Build through :func:`validate_fan` (or the family generators), which
    normalizes the rotation so rays[0] has the smallest angle from the
    positive x-axis.
    """

    rays: tuple[LatticeVector, ...]

    @property
    def n(self) -> int:
        return len(self.rays)

    def ray(self, i: int) -> LatticeVector:
        """Ray by cyclic 0-based index."""
        return self.rays[i % len(self.rays)]

    def index_of(self, v: LatticeVector) -> int | None:
        """0-based position of a ray, or None."""
        try:
            return self.rays.index(v)
        except ValueError:
            return None

    def canonical_label(self) -> str:
        return ";".join(f"{v.x} {v.y}" for v in self.rays)

    def __str__(self) -> str:
        return f"Fan[{', '.join(str(v) for v in self.rays)}]"


@dataclass(frozen=True)
class TorusDivisor:
    """Integer coefficients a_1..a_n aligned with the rays of a fan."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        for a in self.coeffs:
            if not isinstance(a, int):
                raise TypeError("divisor coefficients must be int")
            check_input_coord(a, "divisor coefficient")

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        if len(self.coeffs) != len(other.coeffs):
            raise PreconditionError("divisors live on fans with different ray counts")
        return TorusDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "TorusDivisor":
        return TorusDivisor(tuple(k * a for a in self.coeffs))

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.coeffs) + ")"


class PositivityClass(Enum):
    AMPLE = "ample"
    GLOBALLY_GENERATED_NOT_AMPLE = "globally_generated_not_ample"
    EFFECTIVE_SECTIONS_ONLY = "effective_sections_only"
    NO_SECTIONS = "no_sections"

    def is_globally_generated(self) -> bool:
        return self in (PositivityClass.AMPLE, PositivityClass.GLOBALLY_GENERATED_NOT_AMPLE)


def _angle_half(v: LatticeVector) -> int:
    return 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1


def _angle_lt(a: LatticeVector, b: LatticeVector) -> bool:
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return ha < hb
    return a.cross(b) > 0


def validate_fan(rays: Sequence[LatticeVector | tuple[int, int]]) -> Fan:
    """Check smoothness, completeness and CCW order; normalize the rotation.

    Diagnoses the first violated condition: a non-primitive ray, a
    consecutive determinant different from 1, a duplicate ray, or a ray
    sequence that does not make exactly one CCW turn.
    """
    vs = [v if isinstance(v, LatticeVector) else LatticeVector(*v) for v in rays]
    for v in vs:
        check_input_coord(v.x, "ray coordinate")
        check_input_coord(v.y, "ray coordinate")
    if len(vs) < 3:
        raise NonCompleteFanError(f"{len(vs)} rays cannot go around the origin")
    for i, v in enumerate(vs):
        if (v.x, v.y) == (0, 0) or not v.is_primitive():
            raise NonPrimitiveRayError(i, v.as_tuple())
    n = len(vs)
    seen: set[tuple[int, int]] = set()
    for i, v in enumerate(vs):
        if v.as_tuple() in seen:
            raise DuplicateRayError(i, v.as_tuple())
        seen.add(v.as_tuple())
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        det = a.cross(b)
        if det != 1:
            raise NonSmoothFanError(i, det)
    wraps = sum(1 for i in range(n) if not _angle_lt(vs[i], vs[(i + 1) % n]))
    if wraps != 1:
        raise NonCompleteFanError(f"ray angles wrap {wraps} times instead of once")
    start = min(range(n), key=lambda i: sum(1 for j in range(n) if _angle_lt(vs[j], vs[i])))
    return Fan(tuple(vs[start:] + vs[:start]))


def polygon_of(fan: Fan, d: TorusDivisor) -> ConvexLatticePolygon:
    """The section polygon { u : <u, v_i> >= -a_i }; bounded by completeness."""
    if len(d.coeffs) != fan.n:
        raise PreconditionError(
            f"divisor has {len(d.coeffs)} coefficients for a fan with {fan.n} rays"
        )
    return _polygon_of_cached(fan.rays, d.coeffs)


@lru_cache(maxsize=65536)
def _polygon_of_cached(
    rays: tuple[LatticeVector, ...], coeffs: tuple[int, ...]
) -> ConvexLatticePolygon:
    return intersect_halfplanes([HalfPlane(v, a) for v, a in zip(rays, coeffs)])


def h0(fan: Fan, d: TorusDivisor) -> int:
    """Number of sections = number of lattice points of the polygon."""
    return len(lattice_points(polygon_of(fan, d)))


def classify(fan: Fan, d: TorusDivisor) -> PositivityClass:
    """Positivity of a divisor, decided from its polygon.

    Globally generated: every offset a_i is tight on the polygon and all
    vertices are lattice points.  Ample: additionally every ray supports a
    nondegenerate edge.
    """
    if len(d.coeffs) != fan.n:
        raise PreconditionError(
            f"divisor has {len(d.coeffs)} coefficients for a fan with {fan.n} rays"
        )
    return _classify_cached(fan, d)


@lru_cache(maxsize=65536)
def _classify_cached(fan: Fan, d: TorusDivisor) -> PositivityClass:
    poly = polygon_of(fan, d)
    if poly.is_empty():
        return PositivityClass.NO_SECTIONS
    tight = all(
        poly.support_min(v) == -a for v, a in zip(fan.rays, d.coeffs)
    )
    if tight and poly.has_lattice_vertices():
        faces = (face_in_direction(poly, v, a) for v, a in zip(fan.rays, d.coeffs))
        if all(f.kind is FaceKind.EDGE for f in faces):
            return PositivityClass.AMPLE
        return PositivityClass.GLOBALLY_GENERATED_NOT_AMPLE
    if lattice_points(poly):
        return PositivityClass.EFFECTIVE_SECTIONS_ONLY
    return PositivityClass.NO_SECTIONS


# -- families ------------------------------------------------------------------


def projective_plane() -> Fan:
    return validate_fan([(1, 0), (0, 1), (-1, -1)])


def product_p1_p1() -> Fan:
    return validate_fan([(1, 0), (0, 1), (-1, 0), (0, -1)])


def hirzebruch(a: int) -> Fan:
    """The fan with rays (1,0), (0,1), (-1,a), (0,-1); a >= 0."""
    if a < 0:
        raise PreconditionError("hirzebruch parameter must be >= 0")
    return validate_fan([(1, 0), (0, 1), (-1, a), (0, -1)])


def blowup(fan: Fan, corner: int, max_rays: int = MAX_GENERATED_RAYS) -> Fan:
    """Insert v_i + v_{i+1} between rays i and i+1 (1-based corner index)."""
    if fan.n + 1 > max_rays:
        raise FanSizeError(f"blowup would exceed {max_rays} rays")
    if not (1 <= corner <= fan.n):
        raise PreconditionError(f"corner index must be in [1, {fan.n}]")
    i = corner - 1
    new_ray = fan.rays[i] + fan.ray(i + 1)
    rays = list(fan.rays)
    rays.insert(i + 1, new_ray)
    return validate_fan(rays)


_FAMILY_NAMES = {
    "p2": projective_plane,
    "projective_plane": projective_plane,
    "p1xp1": product_p1_p1,
    "product_p1_p1": product_p1_p1,
}


def generate_family(descriptor: str, max_rays: int = MAX_GENERATED_RAYS) -> Fan:
    """Build a fan from a textual descriptor.

    Grammar: ``p2``, ``p1xp1``, ``f<a>`` or ``hirzebruch(<a>)`` for the
    ruled surfaces, and ``blowup(<descriptor>, <corner>)`` with a 1-based
    corner index, nested freely, e.g. ``blowup(blowup(p2, 1), 4)``.
    """
    text = descriptor.strip().lower()
    if text in _FAMILY_NAMES:
        return _FAMILY_NAMES[text]()
    if text.startswith("f") and text[1:].isdigit():
        return hirzebruch(int(text[1:]))
    if text.startswith("hirzebruch(") and text.endswith(")"):
        inner = text[len("hirzebruch(") : -1].strip()
        if not inner.lstrip("-").isdigit():
            raise PreconditionError(f"bad hirzebruch parameter {inner!r}")
        return hirzebruch(int(inner))
    if text.startswith("blowup(") and text.endswith(")"):
        inner = text[len("blowup(") : -1]
        depth = 0
        split_at = -1
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                split_at = i
        if split_at < 0:
            raise PreconditionError(f"blowup descriptor needs a corner index: {descriptor!r}")
        base = generate_family(inner[:split_at], max_rays)
        corner_text = inner[split_at + 1 :].strip()
        if not corner_text.lstrip("-").isdigit():
            raise PreconditionError(f"bad corner index {corner_text!r}")
        return blowup(base, int(corner_text), max_rays)
    raise PreconditionError(f"unknown family descriptor {descriptor!r}")


def random_divisor(
    fan: Fan,
    positivity: PositivityClass,
    max_coeff: int,
    seed: int,
    budget: int = SAMPLING_BUDGET,
) -> TorusDivisor:
    """Rejection-sample a divisor of the requested class, coefficients in [0, max_coeff].

    Deterministic in the seed; raises :class:`SamplingBudgetError` when the
    class is not hit within the draw budget.
    """
    if max_coeff < 1:
        raise PreconditionError("max_coeff must be >= 1")
    rng = random.Random(seed)
    for _ in range(budget):
        d = TorusDivisor(tuple(rng.randint(0, max_coeff) for _ in range(fan.n)))
        if classify(fan, d) is positivity:
            return d
    raise SamplingBudgetError(
        f"no {positivity.value} divisor with coefficients <= {max_coeff} found in {budget} draws"
    )
