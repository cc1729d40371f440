"""Spherical trigonometry kernel: closed-form triangle solvers on the unit 2-sphere.

Every length and angle is a plain radian value; there is no degree support
anywhere.  A valid triangle has all three sides in (0, pi), satisfies the
three triangle inequalities with margin VALIDITY_MARGIN, and has perimeter
below 2*pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PI = math.pi
TWO_PI = 2.0 * math.pi

# Inverse-trig arguments may leave [-1, 1] by roundoff; anything beyond
# CLAMP_TOL signals real trouble rather than noise.
CLAMP_TOL = 1e-12
# Margin applied to every triangle inequality; boundary-degenerate
# triangles are rejected so downstream solvers see a uniform interior.
VALIDITY_MARGIN = 1e-10


class SphericalGeometryError(ValueError):
    """Base error for the kernel."""


class NumericalCorruptionError(SphericalGeometryError):
    """An inverse-trig argument left [-1, 1] by more than CLAMP_TOL."""


class NoTriangleError(SphericalGeometryError):
    """The given data cannot be realized by any spherical triangle."""


class InvalidTriangleError(SphericalGeometryError):
    """A triangle violates a validity invariant; ``violation`` names it."""

    def __init__(self, message: str, violation: str):
        super().__init__(message)
        self.violation = violation


class InconsistentDataError(SphericalGeometryError):
    """Mutually contradictory data, e.g. equal sides with unequal angles."""


class DegenerateConfigurationError(SphericalGeometryError):
    """Data too close to a degenerate configuration to resolve."""


def clamped_acos(x: float) -> float:
    """acos with a CLAMP_TOL guard band outside [-1, 1]."""
    if x > 1.0:
        if x > 1.0 + CLAMP_TOL:
            raise NumericalCorruptionError(
                f"acos argument {x!r} exceeds 1 beyond the roundoff clamp")
        return 0.0
    if x < -1.0:
        if x < -1.0 - CLAMP_TOL:
            raise NumericalCorruptionError(
                f"acos argument {x!r} is below -1 beyond the roundoff clamp")
        return PI
    return math.acos(x)


def clamped_asin(x: float) -> float:
    """asin with a CLAMP_TOL guard band outside [-1, 1]."""
    if x > 1.0:
        if x > 1.0 + CLAMP_TOL:
            raise NumericalCorruptionError(
                f"asin argument {x!r} exceeds 1 beyond the roundoff clamp")
        return PI / 2.0
    if x < -1.0:
        if x < -1.0 - CLAMP_TOL:
            raise NumericalCorruptionError(
                f"asin argument {x!r} is below -1 beyond the roundoff clamp")
        return -PI / 2.0
    return math.asin(x)


def _require_range(name: str, value: float, lo: float = 0.0, hi: float = PI) -> None:
    if not (lo < value < hi):
        raise SphericalGeometryError(
            f"{name} = {value!r} outside the open interval ({lo}, {hi})")


@dataclass(frozen=True)
class SphericalTriangle:
    """Three side lengths of a spherical triangle, in radians."""

    a: float
    b: float
    c: float

    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def violations(self, margin: float = VALIDITY_MARGIN) -> list[str]:
        """All violated validity invariants, each with its margin."""
        out = []
        for name, s in zip("abc", self.sides()):
            if not (margin < s < PI - margin):
                out.append(f"side {name} = {s!r} outside (0, pi)")
        a, b, c = self.sides()
        for name, lhs, rhs in (("a < b + c", a, b + c),
                               ("b < a + c", b, a + c),
                               ("c < a + b", c, a + b)):
            if lhs >= rhs - margin:
                out.append(f"triangle inequality {name} violated by {lhs - rhs!r}")
        if a + b + c >= TWO_PI - margin:
            out.append(f"perimeter {a + b + c!r} not below 2*pi")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self, margin: float = VALIDITY_MARGIN) -> None:
        bad = self.violations(margin)
        if bad:
            raise InvalidTriangleError(
                f"invalid spherical triangle {self.sides()}: {bad[0]}",
                violation=bad[0])


@dataclass(frozen=True)
class TriangleAngles:
    """Interior angles, A opposite side a and so on."""

    A: float
    B: float
    C: float

    def angles(self) -> tuple[float, float, float]:
        return (self.A, self.B, self.C)

    @property
    def excess(self) -> float:
        return self.A + self.B + self.C - PI


def side_from_sas(a: float, b: float, C: float) -> float:
    """Third side from two sides and the included angle (spherical cosine law)."""
    _require_range("side a", a)
    _require_range("side b", b)
    _require_range("angle C", C)
    arg = math.cos(a) * math.cos(b) + math.sin(a) * math.sin(b) * math.cos(C)
    return clamped_acos(arg)


def angles_from_sss(t: SphericalTriangle) -> TriangleAngles:
    """All three angles of a valid triangle (inverse cosine law)."""
    t.require_valid()
    a, b, c = t.sides()
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    sa, sb, sc = math.sin(a), math.sin(b), math.sin(c)
    A = clamped_acos((ca - cb * cc) / (sb * sc))
    B = clamped_acos((cb - ca * cc) / (sa * sc))
    C = clamped_acos((cc - ca * cb) / (sa * sb))
    return TriangleAngles(A, B, C)


def dual_cosine_angle(A: float, B: float, c: float) -> float:
    """Angle opposite side c from the two angles adjacent to it.

    Uses the dual (polar) cosine law cos C = -cos A cos B + sin A sin B cos c.
    An argument outside [-1, 1] beyond the roundoff clamp means no triangle
    carries these data, which is reported as NoTriangleError rather than as
    numerical corruption.
    """
    _require_range("angle A", A)
    _require_range("angle B", B)
    _require_range("side c", c)
    arg = -math.cos(A) * math.cos(B) + math.sin(A) * math.sin(B) * math.cos(c)
    if arg > 1.0 + CLAMP_TOL or arg < -1.0 - CLAMP_TOL:
        raise NoTriangleError(
            f"no triangle with angles ({A!r}, {B!r}) across side {c!r}")
    return clamped_acos(arg)


def napier_corner(A: float, B: float, a: float, b: float) -> float:
    """Remaining angle from two angles and their opposite sides.

    Evaluates cot(C/2) = tan((A - B)/2) * sin((a + b)/2) / sin((a - b)/2)
    and inverts the cotangent onto (0, 2*pi), so corner totals beyond pi
    (reflex corners of glued pieces) are representable.  Proper triangles
    always land in (0, pi).
    """
    _require_range("angle A", A)
    _require_range("angle B", B)
    _require_range("side a", a)
    _require_range("side b", b)
    half_diff = 0.5 * (a - b)
    if abs(math.sin(half_diff)) < 1e-14:
        if abs(A - B) > 1e-12:
            if a == b:
                raise InconsistentDataError(
                    f"sides {a!r} and {b!r} equal but opposite angles "
                    f"{A!r} and {B!r} differ")
            raise DegenerateConfigurationError(
                f"sides {a!r}, {b!r} too close to resolve unequal angles "
                f"{A!r}, {B!r}")
        # Equal sides and equal angles leave the closure underdetermined;
        # fall back to the isosceles completion with base (a + b)/2.
        return dual_cosine_angle(A, B, 0.5 * (a + b))
    cot_half = (math.tan(0.5 * (A - B)) * math.sin(0.5 * (a + b))
                / math.sin(half_diff))
    return 2.0 * math.atan2(1.0, cot_half)


def sine_rule_side(A: float, a: float, B: float, branch: str) -> float:
    """Side opposite B from the sine rule, with an explicit branch choice.

    branch selects the acute solution in (0, pi/2] or the obtuse one in
    [pi/2, pi); the rule alone cannot disambiguate.
    """
    _require_range("angle A", A)
    _require_range("angle B", B)
    _require_range("side a", a)
    if branch not in ("acute", "obtuse"):
        raise ValueError(f"branch must be 'acute' or 'obtuse', got {branch!r}")
    ratio = math.sin(B) * math.sin(a) / math.sin(A)
    if ratio > 1.0 + CLAMP_TOL:
        raise NoTriangleError(
            f"sine-rule ratio {ratio!r} exceeds 1: no such triangle")
    if ratio <= 0.0:
        raise SphericalGeometryError(f"sine-rule ratio {ratio!r} not positive")
    b = clamped_asin(min(ratio, 1.0))
    return b if branch == "acute" else PI - b


def triangle_excess(t: SphericalTriangle) -> float:
    """Spherical area of the triangle via the angle excess."""
    return angles_from_sss(t).excess
