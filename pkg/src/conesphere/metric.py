"""Triangulated cone metrics on the sphere and the glued-football family.

A metric is encoded by six geodesic edge lengths l1..l6 of a four-triangle
decomposition: an isosceles triangle T1 = (l1, l1, l5) hanging off cone point
A, its partner T3 = (l2, l2, l6) off B, and two slit triangles
T2 = (l3, l4, l5) and T4 = (l4, l3, l6) meeting at cone point D.  The eight
remaining corners collect at the 4*pi cone point C.

The one-parameter family glued_football(alpha, beta, t) cross-glues two
spherical footballs of cone angles alpha and beta along a meridian slit of
length t and realizes cone angles (alpha, beta, alpha + beta, 4*pi) exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .sphtrig import (
    PI,
    TWO_PI,
    SphericalTriangle,
    InvalidTriangleError,
    angles_from_sss,
    clamped_asin,
    triangle_excess,
)

LENGTH_FIELDS = ("l1", "l2", "l3", "l4", "l5", "l6")


class MetricDocumentError(ValueError):
    """Malformed metric document; ``location`` points at the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location


class MetricRangeError(ValueError):
    """A metric document field is outside its legal range."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location


@dataclass(frozen=True)
class ConeAngleSpec:
    """Target cone angles (alpha, beta, alpha + beta, 4*pi), alpha/beta in (0, pi)."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if not (0.0 < v < PI):
                raise ValueError(f"{name} = {v!r} outside the supported range (0, pi)")
        # Automatic in (0, pi) but asserted anyway: no angle may be a
        # multiple of 2*pi.
        for name, v in (("alpha", self.alpha), ("beta", self.beta),
                        ("alpha+beta", self.alpha + self.beta)):
            if abs(v % TWO_PI) < 1e-15:
                raise ValueError(f"cone angle {name} lies in 2*pi*Z")

    def cone_vector(self) -> tuple[float, float, float, float]:
        """Cone angles (theta_A, theta_B, theta_D, theta_C) in radians."""
        return (self.alpha, self.beta, self.alpha + self.beta, 2.0 * TWO_PI)

    def normalized(self) -> tuple[float, float, float, float]:
        """Cone angles divided by 2*pi."""
        return (self.alpha / TWO_PI, self.beta / TWO_PI,
                (self.alpha + self.beta) / TWO_PI, 2.0)


@dataclass(frozen=True)
class GluedFootballParams:
    """A cone-angle target plus the slit length t in (0, pi)."""

    spec: ConeAngleSpec
    t: float

    def __post_init__(self):
        if not (0.0 < self.t < PI):
            raise ValueError(f"slit length t = {self.t!r} outside (0, pi)")


@dataclass(frozen=True)
class TriangulatedMetric:
    """Six edge lengths of the four-triangle decomposition, radians in (0, pi)."""

    l1: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float

    def lengths(self) -> tuple[float, ...]:
        return (self.l1, self.l2, self.l3, self.l4, self.l5, self.l6)

    @classmethod
    def from_lengths(cls, lengths) -> "TriangulatedMetric":
        vals = tuple(float(v) for v in lengths)
        if len(vals) != 6:
            raise ValueError(f"expected 6 lengths, got {len(vals)}")
        return cls(*vals)

    def triangles(self) -> tuple[SphericalTriangle, ...]:
        """T1..T4; T1/T3 are the isosceles A/B triangles, T2/T4 the slit pair."""
        return (
            SphericalTriangle(self.l1, self.l1, self.l5),
            SphericalTriangle(self.l3, self.l4, self.l5),
            SphericalTriangle(self.l2, self.l2, self.l6),
            SphericalTriangle(self.l4, self.l3, self.l6),
        )


@dataclass(frozen=True)
class ConeAngles:
    """Total angles collected at the four cone points."""

    theta_A: float
    theta_B: float
    theta_D: float
    theta_C: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.theta_A, self.theta_B, self.theta_D, self.theta_C)


@dataclass(frozen=True)
class ValidityReport:
    """Every violated invariant of a metric, with margins; empty means valid."""

    issues: tuple[str, ...]

    @property
    def is_valid(self) -> bool:
        return not self.issues

    def __str__(self):
        if self.is_valid:
            return "valid"
        return "; ".join(self.issues)


def validate(m: TriangulatedMetric) -> ValidityReport:
    """Total validity check: range of every length plus all four triangles."""
    issues: list[str] = []
    for name, v in zip(LENGTH_FIELDS, m.lengths()):
        if not (0.0 < v < PI):
            issues.append(f"{name} = {v!r} outside (0, pi)")
    if not issues:
        for idx, tri in enumerate(m.triangles(), start=1):
            for bad in tri.violations():
                issues.append(f"T{idx}: {bad}")
    return ValidityReport(tuple(issues))


def glued_football(p: GluedFootballParams) -> TriangulatedMetric:
    """Cross-glue two footballs of angles (alpha, beta) along a slit of length t.

    Closed forms: l1 = l2 = pi - t, l3 = l4 = t, and the chord across each
    opened slit is l5 = 2*asin(sin t * sin(alpha/2)) (l6 with beta).  The
    result realizes the cone angles of p.spec exactly.
    """
    alpha, beta, t = p.spec.alpha, p.spec.beta, p.t
    l5 = 2.0 * clamped_asin(math.sin(t) * math.sin(0.5 * alpha))
    l6 = 2.0 * clamped_asin(math.sin(t) * math.sin(0.5 * beta))
    m = TriangulatedMetric(PI - t, PI - t, t, t, l5, l6)
    report = validate(m)
    if not report.is_valid:
        raise InvalidTriangleError(
            f"glued football at t = {t!r} degenerates: {report}",
            violation=report.issues[0])
    return m


def cone_angles(m: TriangulatedMetric) -> ConeAngles:
    """Total angle at each cone point, from SSS solves of the four triangles.

    theta_A and theta_B are the apex angles of T1 and T3, theta_D collects
    the two slit-triangle apexes, and theta_C sums the eight remaining
    corner angles.
    """
    angs = []
    for idx, tri in enumerate(m.triangles(), start=1):
        try:
            angs.append(angles_from_sss(tri))
        except InvalidTriangleError as err:
            raise InvalidTriangleError(
                f"triangle T{idx} invalid: {err}", violation=err.violation
            ) from err
    a1, a2, a3, a4 = angs
    theta_c = (a1.A + a1.B + a2.A + a2.B + a3.A + a3.B + a4.A + a4.B)
    return ConeAngles(theta_A=a1.C, theta_B=a3.C,
                      theta_D=a2.C + a4.C, theta_C=theta_c)


def total_area(m: TriangulatedMetric) -> float:
    """Surface area as the sum of the four triangle excesses."""
    return sum(triangle_excess(tri) for tri in m.triangles())


def metric_distance(m: TriangulatedMetric, other: TriangulatedMetric) -> float:
    """Max-norm distance between edge-length tuples (the closeness notion)."""
    return max(abs(x - y) for x, y in zip(m.lengths(), other.lengths()))


def serialize(m: TriangulatedMetric, spec: ConeAngleSpec) -> str:
    """Render the metric document (JSON, full double precision)."""
    doc = {
        "spec": {"alpha": spec.alpha, "beta": spec.beta},
        "lengths": dict(zip(LENGTH_FIELDS, m.lengths())),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def deserialize(text: str) -> tuple[TriangulatedMetric, ConeAngleSpec]:
    """Parse a metric document; structural and range errors are distinguished."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise MetricDocumentError(f"not valid JSON: {err}", location="") from err
    if not isinstance(doc, dict):
        raise MetricDocumentError("document root must be an object", location="")
    for section in ("spec", "lengths"):
        if section not in doc or not isinstance(doc[section], dict):
            raise MetricDocumentError(f"missing section {section!r}",
                                      location=section)
    spec_doc = doc["spec"]
    for field in ("alpha", "beta"):
        if field not in spec_doc:
            raise MetricDocumentError(f"missing field spec.{field}",
                                      location=f"spec.{field}")
        if not isinstance(spec_doc[field], (int, float)) or isinstance(spec_doc[field], bool):
            raise MetricDocumentError(f"spec.{field} must be a number",
                                      location=f"spec.{field}")
    lengths_doc = doc["lengths"]
    vals = []
    for field in LENGTH_FIELDS:
        if field not in lengths_doc:
            raise MetricDocumentError(f"missing field lengths.{field}",
                                      location=f"lengths.{field}")
        v = lengths_doc[field]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise MetricDocumentError(f"lengths.{field} must be a number",
                                      location=f"lengths.{field}")
        vals.append(float(v))
    for field, v in zip(LENGTH_FIELDS, vals):
        if not (0.0 < v < PI):
            raise MetricRangeError(
                f"lengths.{field} = {v!r} outside (0, pi)",
                location=f"lengths.{field}")
    try:
        spec = ConeAngleSpec(float(spec_doc["alpha"]), float(spec_doc["beta"]))
    except ValueError as err:
        raise MetricRangeError(f"spec out of range: {err}", location="spec") from err
    return TriangulatedMetric(*vals), spec
