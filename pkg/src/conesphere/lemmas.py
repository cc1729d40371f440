"""Direct verification suites for the geometric facts behind the rigidity result.

Each suite turns one ingredient of the rigidity argument into a concrete
numerical sweep:

* slit-piece solves (half_piece_solve) reconstruct one Z2-symmetric half of a
  glued piece from its apex half-angle, its D-side half-angle and the slit
  length, and report the total corner angle collected at the 4*pi cone
  point.  Corner totals may exceed pi; they are assembled from two proper
  isosceles triangles so every intermediate step stays in classical range.
* lemma2_defect measures how far the corner total of two such pieces with an
  unevenly split D-angle misses 4*pi.
* lemma3_sweep locates the extrema of the base-angle sum of triangles with a
  fixed base and fixed opposite angle, which occur at the isosceles shapes.
* lemma1_caseb_exclusion certifies that two non-identical triangles over the
  chord can never piece together into a bigon.
* step1_asymmetric_exclusion repeats the defect sweep for unequal football
  angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .sphtrig import (
    PI,
    InconsistentDataError,
    NoTriangleError,
    SphericalTriangle,
    angles_from_sss,
    napier_corner,
    side_from_sas,
    sine_rule_side,
)


@dataclass(frozen=True)
class HalfPieceConfig:
    """One symmetric half of a glued piece.

    apex_half and d_half are the halves of the apex cone angle and of the
    D-side cone angle carried by this piece (both below pi/2 so the doubled
    piece keeps proper apexes); ell is the slit length l3 = l4 and branch
    chooses the acute or obtuse sine-rule solution for the outer side.
    """

    apex_half: float
    d_half: float
    ell: float
    branch: str

    def __post_init__(self):
        for name, v in (("apex_half", self.apex_half), ("d_half", self.d_half)):
            if not (0.0 < v < PI / 2.0):
                raise ValueError(f"{name} = {v!r} outside (0, pi/2)")
        if not (0.0 < self.ell < PI):
            raise ValueError(f"ell = {self.ell!r} outside (0, pi)")
        if self.branch not in ("acute", "obtuse"):
            raise ValueError(f"branch must be 'acute' or 'obtuse', got {self.branch!r}")


@dataclass(frozen=True)
class HalfPieceSolution:
    """Outer side length plus the corner angle at the 4*pi vertex."""

    side: float
    corner: float


@dataclass(frozen=True)
class Lemma2Defect:
    """Defect of the total corner angle against 4*pi for an uneven D-split."""

    l1: float
    l2: float
    alpha1: float
    alpha2: float
    defect: float


@dataclass(frozen=True)
class ExtremalityResult:
    """One interior extremum of the base-angle sum; kind classifies it."""

    alpha_crit: float
    s_crit: float
    kind: str  # "minimum" | "maximum" | "degenerate"


@dataclass(frozen=True)
class Lemma3Result:
    degenerate: bool
    extrema: tuple[ExtremalityResult, ...]
    feasible_nodes: int
    infeasible_nodes: int


@dataclass(frozen=True)
class CaseBRow:
    l1: float
    cos_l5: float
    bigon_ratio: float
    required_sin2_alpha: float
    incompatible: bool
    alpha_scan_min: float


@dataclass(frozen=True)
class CaseBReport:
    beta: float
    rows: tuple[CaseBRow, ...]

    @property
    def all_excluded(self) -> bool:
        return all(r.incompatible for r in self.rows)


@dataclass(frozen=True)
class DefectRow:
    ell: float
    result: Lemma2Defect | None

    @property
    def feasible(self) -> bool:
        return self.result is not None


@dataclass(frozen=True)
class DefectSweepReport:
    rows: tuple[DefectRow, ...]

    @property
    def feasible_rows(self) -> tuple[DefectRow, ...]:
        return tuple(r for r in self.rows if r.feasible)

    @property
    def signs(self) -> set[int]:
        return {int(math.copysign(1.0, r.result.defect))
                for r in self.feasible_rows if r.result.defect != 0.0}

    @property
    def single_sign(self) -> bool:
        sg = self.signs
        return len(sg) == 1 and all(
            r.result.defect != 0.0 for r in self.feasible_rows)


def half_piece_solve(cfg: HalfPieceConfig) -> HalfPieceSolution:
    """Solve one half piece; the corner comes from the SSS oracle path.

    The outer side follows from the sine rule with the requested branch.
    The corner angle is assembled by doubling the half piece across its
    symmetry axis and splitting the quadrilateral along the chord between
    the two corner copies: one isosceles triangle carries the apex, the
    other carries the D-angle, and the corner is the sum of one base angle
    of each.  The same corner recomputed through the half-angle analogy
    must agree; a disagreement means corrupted input and raises.
    """
    side = sine_rule_side(cfg.apex_half, cfg.ell, cfg.d_half, cfg.branch)
    diag = side_from_sas(side, side, 2.0 * cfg.apex_half)
    upper = SphericalTriangle(side, side, diag)
    lower = SphericalTriangle(cfg.ell, cfg.ell, diag)
    upper.require_valid()
    lower.require_valid()
    up = angles_from_sss(upper)
    low = angles_from_sss(lower)
    # The lower apex must reproduce the doubled D-half-angle.
    if abs(low.C - 2.0 * cfg.d_half) > 1e-8:
        raise NoTriangleError(
            f"half piece does not close: lower apex {low.C!r} "
            f"vs expected {2.0 * cfg.d_half!r}")
    corner = up.A + low.A
    corner_analogy = napier_corner(cfg.apex_half, cfg.d_half, cfg.ell, side)
    if abs(corner - corner_analogy) > 1e-8:
        raise InconsistentDataError(
            f"corner angle mismatch: SSS path {corner!r} vs analogy "
            f"{corner_analogy!r}")
    return HalfPieceSolution(side=side, corner=corner)


def lemma2_defect(beta: float, eps: float, ell: float, regime: str) -> Lemma2Defect:
    """Corner-total defect for the equal-angle surface with D-split beta -+ 2*eps.

    regime "below" is the perturbation branch with l1, l2 < pi/2 (slit
    length above pi/2); "above" is the mirror branch.
    """
    _check_regime(ell, regime)
    b1, b2 = beta - 2.0 * eps, beta + 2.0 * eps
    if not (0.0 < b1 < PI and 0.0 < b2 < PI):
        raise ValueError(f"D-split {b1!r}, {b2!r} leaves (0, pi)")
    branch = "acute" if regime == "below" else "obtuse"
    p1 = half_piece_solve(HalfPieceConfig(0.5 * beta, 0.5 * b1, ell, branch))
    p2 = half_piece_solve(HalfPieceConfig(0.5 * beta, 0.5 * b2, ell, branch))
    return Lemma2Defect(l1=p1.side, l2=p2.side,
                        alpha1=p1.corner, alpha2=p2.corner,
                        defect=2.0 * (p1.corner + p2.corner) - 4.0 * PI)


def _check_regime(ell: float, regime: str) -> None:
    if regime not in ("below", "above"):
        raise ValueError(f"regime must be 'below' or 'above', got {regime!r}")
    if regime == "below" and not (PI / 2.0 < ell < PI):
        raise ValueError(f"regime 'below' needs ell in (pi/2, pi), got {ell!r}")
    if regime == "above" and not (0.0 < ell < PI / 2.0):
        raise ValueError(f"regime 'above' needs ell in (0, pi/2), got {ell!r}")


def inequality_sign(ell: float, l1: float, l2: float) -> int:
    """Sign of sin(ell) * cos(ell) * sin((l1 - l2)/2)."""
    product = math.sin(ell) * math.cos(ell) * math.sin(0.5 * (l1 - l2))
    if product > 0.0:
        return 1
    if product < 0.0:
        return -1
    return 0


def _angle_sum_roots(alpha: float, ell: float, beta: float,
                     subintervals: int = 96, tol: float = 1e-12) -> list[float]:
    """All s with cos(beta) = -cos(a)cos(s-a) + sin(a)sin(s-a)cos(ell).

    Bracketed bisection over s in (alpha + 1e-9, alpha + pi - 1e-9).
    """
    cos_beta = math.cos(beta)
    cos_ell = math.cos(ell)
    ca, sa = math.cos(alpha), math.sin(alpha)

    def g(s: float) -> float:
        u = s - alpha
        return -ca * math.cos(u) + sa * math.sin(u) * cos_ell - cos_beta

    lo = alpha + 1e-9
    hi = alpha + PI - 1e-9
    nodes = [lo + (hi - lo) * k / subintervals for k in range(subintervals + 1)]
    vals = [g(s) for s in nodes]
    roots = []
    for k in range(subintervals):
        f0, f1 = vals[k], vals[k + 1]
        if f0 == 0.0:
            roots.append(nodes[k])
            continue
        if f0 * f1 < 0.0:
            a, b = nodes[k], nodes[k + 1]
            fa = f0
            while b - a > tol:
                mid = 0.5 * (a + b)
                fm = g(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
    return roots


def lemma3_sweep(ell: float, beta: float, n: int = 241) -> Lemma3Result:
    """Locate the interior extrema of the base-angle sum s(alpha).

    For triangles with fixed base ell and fixed opposite angle beta, s is
    swept over a grid of base angles alpha; interior extrema satisfy
    alpha = s/2 (the isosceles shapes), so they are located by bisecting
    s(alpha) - 2*alpha along each solution branch and classified by the
    local second difference.  cos(ell) = cos(beta) is the degenerate case:
    the critical shape sits in a flat family and is reported as such.
    """
    if abs(math.sin(ell)) < 1e-12:
        raise ValueError(f"ell = {ell!r} too close to a multiple of pi")
    if abs(math.cos(ell) - math.cos(beta)) < 1e-9:
        return Lemma3Result(
            degenerate=True,
            extrema=(ExtremalityResult(PI / 2.0, PI, "degenerate"),),
            feasible_nodes=0, infeasible_nodes=0)

    margin = 1e-3
    alphas = [margin + (PI - 2 * margin) * k / (n - 1) for k in range(n)]
    feasible = 0
    infeasible = 0
    # Lower and upper solution branches, indexed by grid node so that
    # bisection brackets never straddle a feasibility gap.
    branch_points: dict[str, list[tuple[int, float, float]]] = {"low": [], "high": []}
    for idx, a in enumerate(alphas):
        roots = _angle_sum_roots(a, ell, beta)
        if not roots:
            infeasible += 1
            continue
        feasible += 1
        branch_points["low"].append((idx, a, min(roots)))
        branch_points["high"].append((idx, a, max(roots)))
    if feasible == 0:
        raise NoTriangleError(
            f"no feasible base angle for ell = {ell!r}, beta = {beta!r}")

    extrema: list[ExtremalityResult] = []
    for name, points in branch_points.items():
        pick = min if name == "low" else max

        def s_of(a: float) -> float | None:
            roots = _angle_sum_roots(a, ell, beta)
            return pick(roots) if roots else None

        for (i0, a0, s0), (i1, a1, s1) in zip(points, points[1:]):
            if i1 != i0 + 1:
                continue
            g0, g1 = s0 - 2.0 * a0, s1 - 2.0 * a1
            if g0 == 0.0:
                a_star, s_star = a0, s0
            elif g0 * g1 < 0.0:
                lo_a, hi_a, g_lo = a0, a1, g0
                failed = False
                while hi_a - lo_a > 1e-11:
                    mid = 0.5 * (lo_a + hi_a)
                    s_mid = s_of(mid)
                    if s_mid is None:
                        failed = True
                        break
                    g_mid = s_mid - 2.0 * mid
                    if g_lo * g_mid <= 0.0:
                        hi_a = mid
                    else:
                        lo_a, g_lo = mid, g_mid
                if failed:
                    continue
                a_star = 0.5 * (lo_a + hi_a)
                s_val = s_of(a_star)
                if s_val is None:
                    continue
                s_star = s_val
            else:
                continue
            # Root-count folds can fake a sign change across branches;
            # accept only genuine isosceles points.
            if abs(s_star - 2.0 * a_star) > 1e-8:
                continue
            delta = 1e-4
            s_m, s_p = s_of(a_star - delta), s_of(a_star + delta)
            if s_m is None or s_p is None:
                continue
            curvature = s_m + s_p - 2.0 * s_star
            kind = "minimum" if curvature > 0.0 else "maximum"
            if not any(abs(e.alpha_crit - a_star) < 1e-6 for e in extrema):
                extrema.append(ExtremalityResult(a_star, s_star, kind))
    extrema.sort(key=lambda e: e.alpha_crit)
    return Lemma3Result(degenerate=False, extrema=tuple(extrema),
                        feasible_nodes=feasible, infeasible_nodes=infeasible)


def lemma1_caseb_exclusion(beta: float, l1_grid) -> CaseBReport:
    """Certify that the non-identical (bigon) case closes for no l1.

    With l1 + l2 = pi the chord satisfies cos l5 = 1 + (cos beta - 1) sin^2 l1,
    so (cos l5 - 1)/(cos beta - 1) = sin^2 l1 < 1 away from l1 = pi/2, while
    closing the slit triangle over the same chord would need
    sin^2 alpha = (cos beta - 1)/(cos l5 - 1) > 1.  Each grid node is checked
    both ways, including a direct scan over alpha.
    """
    if not (0.0 < beta < PI):
        raise ValueError(f"beta = {beta!r} outside (0, pi)")
    rows = []
    for l1 in l1_grid:
        l1 = float(l1)
        if not (0.0 < l1 < PI):
            raise ValueError(f"l1 = {l1!r} outside (0, pi)")
        if abs(l1 - PI / 2.0) < 1e-9:
            raise ValueError("l1 = pi/2 is the identical-triangle case (a), "
                             "excluded from the grid")
        sin2 = math.sin(l1) ** 2
        cos_l5 = 1.0 + (math.cos(beta) - 1.0) * sin2
        bigon_ratio = (cos_l5 - 1.0) / (math.cos(beta) - 1.0)
        required = (math.cos(beta) - 1.0) / (cos_l5 - 1.0)
        # Direct evidence: no alpha satisfies the slit-triangle closure.
        scan_min = min(
            abs(1.0 + (cos_l5 - 1.0) * math.sin(a) ** 2 - math.cos(beta))
            for a in (1e-2 + (PI - 2e-2) * k / 180.0 for k in range(181)))
        rows.append(CaseBRow(
            l1=l1, cos_l5=cos_l5, bigon_ratio=bigon_ratio,
            required_sin2_alpha=required,
            incompatible=(bigon_ratio < 1.0 and required > 1.0
                          and scan_min > 0.0),
            alpha_scan_min=scan_min))
    return CaseBReport(beta=beta, rows=tuple(rows))


def step1_asymmetric_exclusion(alpha: float, beta: float, eps: float,
                               ell_grid, regime: str) -> DefectSweepReport:
    """Defect sweep for unequal football angles with D-split (alpha-2e, beta+2e)."""
    b1, b2 = alpha - 2.0 * eps, beta + 2.0 * eps
    if not (0.0 < b1 < PI and 0.0 < b2 < PI):
        raise ValueError(f"D-split {b1!r}, {b2!r} leaves (0, pi)")
    branch = "acute" if regime == "below" else "obtuse"
    rows = []
    for ell in ell_grid:
        ell = float(ell)
        _check_regime(ell, regime)
        try:
            p1 = half_piece_solve(HalfPieceConfig(0.5 * alpha, 0.5 * b1, ell, branch))
            p2 = half_piece_solve(HalfPieceConfig(0.5 * beta, 0.5 * b2, ell, branch))
        except NoTriangleError:
            rows.append(DefectRow(ell=ell, result=None))
            continue
        rows.append(DefectRow(ell=ell, result=Lemma2Defect(
            l1=p1.side, l2=p2.side, alpha1=p1.corner, alpha2=p2.corner,
            defect=2.0 * (p1.corner + p2.corner) - 4.0 * PI)))
    return DefectSweepReport(rows=tuple(rows))


def lemma2_sweep(beta: float, eps: float, ell_grid, regime: str) -> DefectSweepReport:
    """lemma2_defect over a grid, infeasible nodes flagged."""
    rows = []
    for ell in ell_grid:
        ell = float(ell)
        try:
            rows.append(DefectRow(ell=ell, result=lemma2_defect(beta, eps, ell, regime)))
        except NoTriangleError:
            rows.append(DefectRow(ell=ell, result=None))
    return DefectSweepReport(rows=tuple(rows))
