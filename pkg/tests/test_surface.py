"""Fans, divisors, polygons, positivity, families, sampling."""

import pytest

from toricmult.errors import (
    DuplicateRayError,
    FanSizeError,
    NonCompleteFanError,
    NonPrimitiveRayError,
    NonSmoothFanError,
    PreconditionError,
    SamplingBudgetError,
)
from toricmult.lattice import LatticeVector, PolygonDim, lattice_points
from toricmult.surface import (
    PositivityClass,
    TorusDivisor,
    blowup,
    classify,
    generate_family,
    h0,
    hirzebruch,
    polygon_of,
    product_p1_p1,
    projective_plane,
    random_divisor,
    validate_fan,
)

V = LatticeVector
D = TorusDivisor


def vrep_ints(poly):
    return [(p.x_num, p.y_num) for p in poly.vrep]


class TestValidateFan:
    def test_projective_plane(self):
        fan = validate_fan([(1, 0), (0, 1), (-1, -1)])
        assert [r.as_tuple() for r in fan.rays] == [(1, 0), (0, 1), (-1, -1)]

    def test_hirzebruch_two(self):
        # four consecutive determinants equal 1, checked by hand
        fan = validate_fan([(1, 0), (0, 1), (-1, 2), (0, -1)])
        assert fan.n == 4

    def test_non_smooth(self):
        with pytest.raises(NonSmoothFanError) as exc:
            validate_fan([(1, 0), (0, 1), (-2, -1)])
        assert exc.value.index == 1 and exc.value.det == 2

    def test_non_primitive(self):
        with pytest.raises(NonPrimitiveRayError) as exc:
            validate_fan([(2, 0), (0, 1), (-1, -1)])
        assert exc.value.index == 0

    def test_clockwise_rejected(self):
        with pytest.raises(NonSmoothFanError):
            validate_fan([(1, 0), (0, -1), (-1, 1)])

    def test_too_few_rays(self):
        with pytest.raises(NonCompleteFanError):
            validate_fan([(1, 0), (-1, 0)])

    def test_duplicate_ray(self):
        with pytest.raises(DuplicateRayError):
            validate_fan([(1, 0), (0, 1), (1, 0), (0, -1)])

    def test_double_cover_rejected(self):
        rays = [(1, 0), (0, 1), (-1, -1)] * 2
        with pytest.raises((NonCompleteFanError, DuplicateRayError)):
            validate_fan(rays)

    def test_rotation_normalized(self):
        a = validate_fan([(0, 1), (-1, -1), (1, 0)])
        b = validate_fan([(1, 0), (0, 1), (-1, -1)])
        assert a == b


class TestPolygonOf:
    def test_p2_o1(self):
        fan = projective_plane()
        p = polygon_of(fan, D((0, 0, 1)))
        assert vrep_ints(p) == [(0, 0), (1, 0), (0, 1)]

    def test_f2_point_class(self):
        fan = hirzebruch(2)
        p = polygon_of(fan, D((0, 1, 0, 0)))
        assert p.dim is PolygonDim.POINT
        assert vrep_ints(p) == [(0, 0)]

    def test_f2_ample_quadrilateral(self):
        fan = hirzebruch(2)
        p = polygon_of(fan, D((1, 0, 1, 1)))
        assert vrep_ints(p) == [(-1, 0), (1, 0), (3, 1), (-1, 1)]

    def test_hrep_aligned_with_rays(self):
        fan = hirzebruch(2)
        d = D((1, 0, 1, 1))
        p = polygon_of(fan, d)
        assert [h.normal for h in p.hrep] == list(fan.rays)
        assert [h.offset for h in p.hrep] == list(d.coeffs)

    def test_length_mismatch(self):
        with pytest.raises(PreconditionError):
            polygon_of(projective_plane(), D((1, 2)))


class TestH0:
    def test_p2_o1(self):
        assert h0(projective_plane(), D((0, 0, 1))) == 3

    def test_f2_point(self):
        assert h0(hirzebruch(2), D((0, 1, 0, 0))) == 1

    def test_f2_quadrilateral(self):
        assert h0(hirzebruch(2), D((1, 0, 1, 1))) == 8

    def test_translation_invariance(self):
        fan = hirzebruch(3)
        d = D((2, 1, 0, 2))
        for m in [V(1, 0), V(0, 1), V(-2, 3)]:
            shifted = D(tuple(a + m.dot(v) for a, v in zip(d.coeffs, fan.rays)))
            assert h0(fan, shifted) == h0(fan, d)


class TestClassify:
    def test_p2_o1_ample(self):
        assert classify(projective_plane(), D((0, 0, 1))) is PositivityClass.AMPLE

    def test_f2_gg_not_ample(self):
        # three support lines pass through (-1,-1), so one face degenerates
        assert (
            classify(hirzebruch(2), D((1, 1, 1, 1)))
            is PositivityClass.GLOBALLY_GENERATED_NOT_AMPLE
        )

    def test_f2_effective_only(self):
        assert (
            classify(hirzebruch(2), D((0, 1, 0, 0)))
            is PositivityClass.EFFECTIVE_SECTIONS_ONLY
        )

    def test_no_sections(self):
        assert classify(projective_plane(), D((0, 0, -1))) is PositivityClass.NO_SECTIONS

    def test_zero_divisor_globally_generated(self):
        fan = product_p1_p1()
        assert (
            classify(fan, D((0, 0, 0, 0)))
            is PositivityClass.GLOBALLY_GENERATED_NOT_AMPLE
        )

    def test_ample_is_globally_generated(self):
        fan = hirzebruch(2)
        d = D((1, 0, 1, 1))
        assert classify(fan, d) is PositivityClass.AMPLE
        assert classify(fan, d).is_globally_generated()

    def test_segment_class_is_gg(self):
        assert (
            classify(hirzebruch(2), D((0, 0, 1, 0)))
            is PositivityClass.GLOBALLY_GENERATED_NOT_AMPLE
        )


class TestFamilies:
    def test_hirzebruch_two_rays(self):
        fan = hirzebruch(2)
        assert [r.as_tuple() for r in fan.rays] == [(1, 0), (0, 1), (-1, 2), (0, -1)]

    def test_blowup_p2_corner_one(self):
        fan = blowup(projective_plane(), 1)
        assert [r.as_tuple() for r in fan.rays] == [(1, 0), (1, 1), (0, 1), (-1, -1)]

    def test_product(self):
        fan = product_p1_p1()
        assert [r.as_tuple() for r in fan.rays] == [(1, 0), (0, 1), (-1, 0), (0, -1)]
        assert fan == hirzebruch(0)

    def test_blowup_chain_valid_and_grows(self):
        fan = projective_plane()
        for _ in range(9):
            before = fan.n
            fan = blowup(fan, 1)
            assert fan.n == before + 1
        with pytest.raises(FanSizeError):
            blowup(fan, 1)

    def test_descriptor_parsing(self):
        assert generate_family("p2") == projective_plane()
        assert generate_family("P1xP1") == product_p1_p1()
        assert generate_family("f2") == hirzebruch(2)
        assert generate_family("hirzebruch(3)") == hirzebruch(3)
        assert generate_family("blowup(p2, 1)") == blowup(projective_plane(), 1)
        nested = generate_family("blowup(blowup(p2, 1), 4)")
        assert nested.n == 5
        with pytest.raises(PreconditionError):
            generate_family("p3")

    def test_all_small_blowups_validate(self):
        # every generated refinement must pass validation on its own
        fans = [projective_plane(), product_p1_p1()]
        frontier = list(fans)
        for _ in range(2):
            new = []
            for fan in frontier:
                for corner in range(1, fan.n + 1):
                    new.append(blowup(fan, corner))
            frontier = new
            fans.extend(new)
        for fan in fans:
            assert validate_fan(list(fan.rays)) == fan


class TestRandomDivisor:
    def test_deterministic_in_seed(self):
        fan = hirzebruch(2)
        a = random_divisor(fan, PositivityClass.AMPLE, 3, seed=11)
        b = random_divisor(fan, PositivityClass.AMPLE, 3, seed=11)
        assert a == b
        assert classify(fan, a) is PositivityClass.AMPLE

    def test_p2_ample(self):
        fan = projective_plane()
        d = random_divisor(fan, PositivityClass.AMPLE, 3, seed=5)
        assert classify(fan, d) is PositivityClass.AMPLE
        assert sum(d.coeffs) >= 1

    def test_f2_effective_only(self):
        fan = hirzebruch(2)
        d = random_divisor(fan, PositivityClass.EFFECTIVE_SECTIONS_ONLY, 5, seed=7)
        assert classify(fan, d) is PositivityClass.EFFECTIVE_SECTIONS_ONLY

    def test_budget_exhaustion(self):
        # no_sections is unreachable with non-negative coefficients
        fan = projective_plane()
        with pytest.raises(SamplingBudgetError):
            random_divisor(fan, PositivityClass.NO_SECTIONS, 2, seed=1, budget=200)

    def test_max_coeff_precondition(self):
        with pytest.raises(PreconditionError):
            random_divisor(projective_plane(), PositivityClass.AMPLE, 0, seed=1)


class TestLatticePointsOnPolygonOf:
    def test_f2_quadrilateral_points(self):
        fan = hirzebruch(2)
        pts = lattice_points(polygon_of(fan, D((1, 0, 1, 1))))
        assert len(pts) == 8
        assert all(-1 <= p.x <= 3 and 0 <= p.y <= 1 for p in pts)
