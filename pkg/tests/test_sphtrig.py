import math

import pytest
from hypothesis import given, settings, strategies as st

from conesphere.sphtrig import (
    PI,
    DegenerateConfigurationError,
    InconsistentDataError,
    InvalidTriangleError,
    NoTriangleError,
    NumericalCorruptionError,
    SphericalTriangle,
    TriangleAngles,
    angles_from_sss,
    clamped_acos,
    dual_cosine_angle,
    napier_corner,
    side_from_sas,
    sine_rule_side,
    triangle_excess,
)


def valid_triangles():
    """Strategy: random valid spherical triangles with a safety margin."""
    def build(a, b, frac):
        lo = abs(a - b) + 1e-3
        hi = min(a + b, 2.0 * PI - a - b) - 1e-3
        return SphericalTriangle(a, b, lo + frac * (hi - lo))

    sides = st.floats(min_value=0.05, max_value=PI - 0.05)
    fracs = st.floats(min_value=0.01, max_value=0.99)
    return st.builds(build, sides, sides, fracs).filter(
        lambda t: t.is_valid)


class TestClamping:
    def test_roundoff_is_clamped(self):
        assert clamped_acos(1.0 + 5e-13) == 0.0
        assert clamped_acos(-1.0 - 5e-13) == PI

    def test_beyond_clamp_raises(self):
        with pytest.raises(NumericalCorruptionError):
            clamped_acos(1.0 + 1e-9)


class TestSideFromSas:
    def test_octant(self):
        assert side_from_sas(PI / 2, PI / 2, PI / 2) == pytest.approx(PI / 2, abs=1e-15)

    def test_direct_formula_value(self):
        c = side_from_sas(PI / 3, PI / 3, PI / 2)
        assert c == pytest.approx(math.acos(0.25), abs=1e-15)
        # Cross-check: the half-angle identity sin(c/2) = sin(pi/3) sin(pi/4).
        assert math.sin(c / 2) == pytest.approx(
            math.sin(PI / 3) * math.sin(PI / 4), abs=1e-15)

    @given(a=st.floats(0.1, PI - 0.1), b=st.floats(0.1, PI - 0.1),
           C=st.floats(0.1, PI - 0.1))
    def test_symmetric_in_a_b(self, a, b, C):
        assert side_from_sas(a, b, C) == side_from_sas(b, a, C)

    @given(a=st.floats(0.2, PI - 0.2), b=st.floats(0.2, PI - 0.2),
           C=st.floats(0.1, PI - 0.2))
    @settings(max_examples=60)
    def test_monotone_in_included_angle(self, a, b, C):
        assert side_from_sas(a, b, C + 0.05) > side_from_sas(a, b, C)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            side_from_sas(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            side_from_sas(1.0, 1.0, PI)


class TestAnglesFromSss:
    def test_octant(self):
        ang = angles_from_sss(SphericalTriangle(PI / 2, PI / 2, PI / 2))
        assert ang.angles() == pytest.approx((PI / 2,) * 3, abs=1e-15)

    def test_isosceles_with_right_angles(self):
        ang = angles_from_sss(SphericalTriangle(PI / 2, PI / 2, PI / 3))
        assert ang.A == pytest.approx(PI / 2, abs=1e-12)
        assert ang.B == pytest.approx(PI / 2, abs=1e-12)
        assert ang.C == pytest.approx(PI / 3, abs=1e-12)

    def test_isosceles_symmetry_exact(self):
        c = side_from_sas(0.8, 0.8, 1.1)
        ang = angles_from_sss(SphericalTriangle(0.8, 0.8, c))
        assert ang.A == ang.B

    def test_invalid_triangle_names_violation(self):
        with pytest.raises(InvalidTriangleError) as err:
            angles_from_sss(SphericalTriangle(2.0, 0.7, 0.7))
        assert "triangle inequality" in err.value.violation

    @given(valid_triangles())
    @settings(max_examples=100)
    def test_round_trip_sas(self, tri):
        ang = angles_from_sss(tri)
        # Rebuild each side from the other two plus the included angle.
        assert side_from_sas(tri.b, tri.c, ang.A) == pytest.approx(tri.a, abs=1e-10)
        assert side_from_sas(tri.a, tri.c, ang.B) == pytest.approx(tri.b, abs=1e-10)
        assert side_from_sas(tri.a, tri.b, ang.C) == pytest.approx(tri.c, abs=1e-10)

    @given(valid_triangles())
    @settings(max_examples=100)
    def test_angle_sum_window(self, tri):
        ang = angles_from_sss(tri)
        assert PI < sum(ang.angles()) < 3.0 * PI


class TestDualCosine:
    def test_two_right_angles_force_apex_equal_to_side(self):
        for c in (0.3, 1.0, 2.0):
            assert dual_cosine_angle(PI / 2, PI / 2, c) == pytest.approx(c, abs=1e-14)

    def test_octant(self):
        assert dual_cosine_angle(PI / 2, PI / 2, PI / 2) == pytest.approx(PI / 2)

    def test_isosceles_extremal_triangle(self):
        # alpha with tan^2(alpha) = 2 closes base pi/3 onto a right apex.
        alpha = math.acos(1.0 / math.sqrt(3.0))
        assert dual_cosine_angle(alpha, alpha, PI / 3) == pytest.approx(
            PI / 2, abs=1e-12)

    @given(A=st.floats(0.05, PI - 0.05), B=st.floats(0.05, PI - 0.05),
           c=st.floats(0.05, PI - 0.05))
    @settings(max_examples=100)
    def test_argument_always_in_range(self, A, B, c):
        # The hinge argument lies strictly inside (-cos(A-B), -cos(A+B)),
        # so in-range data never trips the defensive no-triangle branch.
        arg = (-math.cos(A) * math.cos(B)
               + math.sin(A) * math.sin(B) * math.cos(c))
        assert -1.0 <= arg <= 1.0
        assert 0.0 <= dual_cosine_angle(A, B, c) <= PI

    @given(valid_triangles())
    @settings(max_examples=100)
    def test_agrees_with_sss(self, tri):
        ang = angles_from_sss(tri)
        assert dual_cosine_angle(ang.A, ang.B, tri.c) == pytest.approx(
            ang.C, abs=1e-10)


class TestNapierCorner:
    def test_octant_isosceles_fallback(self):
        assert napier_corner(PI / 2, PI / 2, PI / 2, PI / 2) == pytest.approx(PI / 2)

    def test_equilateral_isosceles_fallback(self):
        tri = SphericalTriangle(1.0, 1.0, 1.0)
        ang = angles_from_sss(tri)
        assert napier_corner(ang.A, ang.B, 1.0, 1.0) == pytest.approx(
            ang.C, abs=1e-10)

    @given(valid_triangles())
    @settings(max_examples=100)
    def test_agrees_with_sss_on_closed_triangles(self, tri):
        ang = angles_from_sss(tri)
        if abs(math.sin(0.5 * (tri.a - tri.b))) < 1e-7:
            return  # too close to the underdetermined isosceles case
        assert napier_corner(ang.A, ang.B, tri.a, tri.b) == pytest.approx(
            ang.C, abs=1e-9)

    def test_equal_sides_unequal_angles_inconsistent(self):
        with pytest.raises(InconsistentDataError):
            napier_corner(0.5, 1.0, 0.8, 0.8)

    def test_near_equal_sides_unequal_angles_degenerate(self):
        with pytest.raises(DegenerateConfigurationError):
            napier_corner(0.5, 1.0, 0.8, 0.8 + 1e-15)

    def test_reflex_output_for_glued_corner_totals(self):
        # The slit-piece suites need corner totals beyond pi; see
        # tests/test_lemmas.py for the geometric cross-check.
        corner = napier_corner(PI / 4, (PI / 2 + 0.1) / 2, 2 * PI / 3,
                               1.1390259991704181)
        assert corner > PI


class TestSineRuleSide:
    def test_isosceles_branch_match(self):
        assert sine_rule_side(0.7, 1.1, 0.7, "acute") == pytest.approx(1.1, abs=1e-14)
        assert sine_rule_side(0.7, 2.5, 0.7, "obtuse") == pytest.approx(2.5, abs=1e-14)

    def test_polar_relation(self):
        b = sine_rule_side(PI / 2, PI / 2, 0.9, "acute")
        assert math.sin(b) == pytest.approx(math.sin(0.9), abs=1e-15)

    def test_slit_piece_example(self):
        b = sine_rule_side(PI / 4, 2 * PI / 3, PI / 4 - 0.05, "acute")
        assert b == pytest.approx(0.9643170952927866, abs=1e-12)
        assert math.sin(b) == pytest.approx(
            math.sin(2 * PI / 3) * math.sin(PI / 4 - 0.05) / math.sin(PI / 4),
            abs=1e-15)

    def test_ratio_above_one_raises(self):
        with pytest.raises(NoTriangleError):
            sine_rule_side(0.2, PI / 2, 1.5, "acute")

    def test_ratio_in_clamp_window_gives_right_angle(self):
        # A = B, a = pi/2 makes the ratio exactly 1 up to roundoff.
        assert sine_rule_side(0.8, PI / 2, 0.8, "acute") == pytest.approx(PI / 2)

    def test_branch_flag_is_mandatory_semantics(self):
        with pytest.raises(ValueError):
            sine_rule_side(0.7, 1.1, 0.7, "auto")


class TestExcess:
    def test_octant(self):
        assert triangle_excess(SphericalTriangle(PI / 2, PI / 2, PI / 2)) == \
            pytest.approx(PI / 2, abs=1e-14)

    def test_thin_triangle_positive(self):
        exc = triangle_excess(SphericalTriangle(PI / 2, PI / 2, 1e-6))
        assert 0.0 < exc < 1e-5

    @given(valid_triangles())
    @settings(max_examples=100)
    def test_bounds(self, tri):
        exc = triangle_excess(tri)
        assert 0.0 < exc < 2.0 * PI
