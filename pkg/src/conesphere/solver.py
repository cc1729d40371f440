"""Cone-angle constraint solver on the six-length space.

The residual map sends edge lengths to the four cone-angle defects
(theta_A - alpha, theta_B - beta, theta_D - (alpha + beta), theta_C - 4*pi).
Around a glued-football point the finite-difference Jacobian of this map is
rank deficient, damped minimum-norm Gauss-Newton projects perturbed metrics
back onto the zero set, and the rigidity scan measures how far multistart
solutions land from the one-parameter glued family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metric import (
    ConeAngleSpec,
    GluedFootballParams,
    TriangulatedMetric,
    cone_angles,
    glued_football,
    validate,
)
from .sphtrig import PI, VALIDITY_MARGIN, clamped_asin, side_from_sas

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Slit parameter window scanned when projecting onto the family.
FAMILY_T_MIN = 1e-4
FAMILY_T_MAX = PI - 1e-4


@dataclass(frozen=True)
class ConstraintResidual:
    """The four cone-angle defects (r_A, r_B, r_D, r_C), radians."""

    r: tuple[float, float, float, float]

    @property
    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.r))


@dataclass(frozen=True)
class GaussNewtonOptions:
    max_iter: int = 50
    res_tol: float = 1e-11
    # Levenberg-style damping, adapted multiplicatively; the floor keeps
    # noise in the finite-difference Jacobian from being amplified into
    # large spurious steps once the residual sits at roundoff level.
    damping0: float = 1e-3
    damping_floor: float = 1e-8
    damping_max: float = 1e3
    fd_step: float = 1e-6
    # After res_tol is met, keep polishing until steps stall; the flat
    # (quadratically degenerate) kernel directions need these extra halvings
    # to pull the iterate tight onto the solution set.
    step_tol: float = 1e-10
    polish_limit: int = 15


@dataclass(frozen=True)
class GaussNewtonResult:
    status: str  # "converged" | "max_iter" | "boundary"
    metric: TriangulatedMetric | None
    residual_norm: float
    iterations: int

    @property
    def success(self) -> bool:
        return self.status == "converged"


@dataclass(frozen=True)
class ScanRow:
    """One node of a defect scan; residuals are None when infeasible."""

    l1: float | None
    l2: float | None
    l3: float
    l4: float
    l5: float | None
    l6: float | None
    r_A: float | None
    r_B: float | None
    r_D: float | None
    r_C: float | None
    feasible: bool


@dataclass(frozen=True)
class RigidityReport:
    spec: ConeAngleSpec
    t: float
    radius: float
    seed: int
    singular_values: tuple[float, float, float, float]
    kernel_dim: int
    starts: int
    converged: int
    boundary_failures: int
    nonconverged: int
    max_family_distance: float
    dist_tol: float
    # One row per converged start: (lengths, residual norm, s_star, distance).
    solutions: tuple[tuple[tuple[float, ...], float, float, float], ...]

    @property
    def rigidity_holds(self) -> bool:
        return self.converged > 0 and self.max_family_distance < self.dist_tol


def _cone_angle_tuple(lengths) -> tuple[float, float, float, float]:
    """(theta_A, theta_B, theta_D, theta_C) via inlined SSS solves.

    Same formulas as metric.cone_angles, unwrapped for the solver loops;
    the agreement of the two paths is pinned by tests.
    """
    l1, l2, l3, l4, l5, l6 = (float(v) for v in lengths)
    acos = math.acos
    cos = math.cos
    sin = math.sin

    def sss(a, b, c):
        ca, cb, cc = cos(a), cos(b), cos(c)
        sa, sb, sc = sin(a), sin(b), sin(c)
        A = acos(max(-1.0, min(1.0, (ca - cb * cc) / (sb * sc))))
        B = acos(max(-1.0, min(1.0, (cb - ca * cc) / (sa * sc))))
        C = acos(max(-1.0, min(1.0, (cc - ca * cb) / (sa * sb))))
        return A, B, C

    a1 = sss(l1, l1, l5)
    a2 = sss(l3, l4, l5)
    a3 = sss(l2, l2, l6)
    a4 = sss(l4, l3, l6)
    theta_c = (a1[0] + a1[1] + a2[0] + a2[1] + a3[0] + a3[1] + a4[0] + a4[1])
    return a1[2], a3[2], a2[2] + a4[2], theta_c


def _residual_vector(lengths, spec: ConeAngleSpec) -> np.ndarray:
    if not _is_valid_lengths(lengths):
        # Route through the strict path so the error names the triangle.
        cone_angles(TriangulatedMetric(*(float(v) for v in lengths)))
    theta = _cone_angle_tuple(lengths)
    target = spec.cone_vector()
    return np.array([theta[0] - target[0], theta[1] - target[1],
                     theta[2] - target[2], theta[3] - target[3]])


def residual(m: TriangulatedMetric, spec: ConeAngleSpec) -> ConstraintResidual:
    """Cone-angle defects of a valid metric against the target spec."""
    vec = _residual_vector(np.array(m.lengths()), spec)
    return ConstraintResidual(tuple(float(v) for v in vec))


def _is_valid_lengths(lengths) -> bool:
    """Fast equivalent of validate(...).is_valid for solver inner loops."""
    m = VALIDITY_MARGIN
    l1, l2, l3, l4, l5, l6 = (float(v) for v in lengths)
    for v in (l1, l2, l3, l4, l5, l6):
        if not (m < v < PI - m):
            return False
    for a, b, c in ((l1, l1, l5), (l3, l4, l5), (l2, l2, l6), (l4, l3, l6)):
        if a >= b + c - m or b >= a + c - m or c >= a + b - m:
            return False
        if a + b + c >= 2.0 * PI - m:
            return False
    return True


def jacobian(m: TriangulatedMetric, spec: ConeAngleSpec, h: float = 1e-6) -> np.ndarray:
    """4x6 central-difference Jacobian of the residual in l1..l6.

    If a probe step leaves the validity region the step is shrunk once by
    16x before giving up.
    """
    x = np.array(m.lengths())
    J = np.zeros((4, 6))
    for i in range(6):
        step = h
        for attempt in range(2):
            xp = x.copy()
            xm = x.copy()
            xp[i] += step
            xm[i] -= step
            if _is_valid_lengths(xp) and _is_valid_lengths(xm):
                J[:, i] = (_residual_vector(xp, spec)
                           - _residual_vector(xm, spec)) / (2.0 * step)
                break
            step /= 16.0
        else:
            raise ValueError(
                f"cannot difference across l{i + 1}: validity margin below {h!r}")
    return J


def numerical_rank(J: np.ndarray, rel_tol: float = 1e-6) -> tuple[int, np.ndarray]:
    """Count of singular values at or above rel_tol times the largest."""
    svals = np.linalg.svd(np.asarray(J, dtype=float), compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return 0, svals
    rank = int(np.sum(svals >= rel_tol * svals[0]))
    return rank, svals


def _damped_min_norm_step(J: np.ndarray, r: np.ndarray, lam: float) -> np.ndarray:
    """Minimum-norm Levenberg step -V diag(s/(s^2+lam^2)) U^T r."""
    U, s, Vt = np.linalg.svd(J, full_matrices=False)
    factors = s / (s * s + lam * lam)
    return -(Vt.T @ (factors * (U.T @ r)))


def gauss_newton(start: TriangulatedMetric, spec: ConeAngleSpec,
                 opts: GaussNewtonOptions | None = None) -> GaussNewtonResult:
    """Project a metric onto the cone-angle constraint set.

    Steps are damped minimum-norm least-squares solutions from the SVD of
    the finite-difference Jacobian, backtracked to stay inside the validity
    region.  Success requires the residual norm below opts.res_tol; the
    iteration then polishes until the step size stalls so that the
    quadratically flat directions are fully resolved.
    """
    opts = opts or GaussNewtonOptions()
    x = np.array(start.lengths())
    if not _is_valid_lengths(x):
        return GaussNewtonResult("boundary", None, math.inf, 0)
    r = _residual_vector(x, spec)
    rnorm = float(np.linalg.norm(r))
    lam = opts.damping0
    last_step = math.inf
    polish = 0
    iterations = 0
    for _ in range(opts.max_iter):
        if rnorm < opts.res_tol:
            if last_step < opts.step_tol or polish >= opts.polish_limit:
                break
            polish += 1
        iterations += 1
        try:
            J = jacobian(TriangulatedMetric(*x), spec, h=opts.fd_step)
        except ValueError:
            return GaussNewtonResult("boundary", TriangulatedMetric(*x),
                                     rnorm, iterations)
        step = _damped_min_norm_step(J, r, lam)
        # Backtrack into the validity region.
        shrink = 0
        while not _is_valid_lengths(x + step):
            step = 0.5 * step
            shrink += 1
            if shrink > 60:
                return GaussNewtonResult("boundary", TriangulatedMetric(*x),
                                         rnorm, iterations)
        x_new = x + step
        r_new = _residual_vector(x_new, spec)
        rnorm_new = float(np.linalg.norm(r_new))
        if rnorm_new <= rnorm or rnorm_new < opts.res_tol:
            last_step = float(np.linalg.norm(step))
            x, r, rnorm = x_new, r_new, rnorm_new
            lam = max(lam / 3.0, opts.damping_floor)
        else:
            lam = min(lam * 10.0, opts.damping_max)
    if rnorm < opts.res_tol:
        return GaussNewtonResult("converged", TriangulatedMetric(*x),
                                 rnorm, iterations)
    return GaussNewtonResult("max_iter", TriangulatedMetric(*x), rnorm, iterations)


def family_distance(m: TriangulatedMetric, spec: ConeAngleSpec) -> tuple[float, float]:
    """Closest glued football: (s_star, Euclidean distance over the six lengths).

    A 200-point coarse scan over the slit parameter is refined by
    golden-section search; scan ties resolve toward smaller s.
    """
    target = np.array(m.lengths())

    def dist(s: float) -> float:
        fam = glued_football(GluedFootballParams(spec, s))
        return float(np.linalg.norm(np.array(fam.lengths()) - target))

    grid = np.linspace(FAMILY_T_MIN, FAMILY_T_MAX, 200)
    values = [dist(s) for s in grid]
    j = int(np.argmin(values))
    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, len(grid) - 1)]
    # Golden-section refinement on [lo, hi].
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = dist(x1), dist(x2)
    while hi - lo > 1e-12:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = dist(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = dist(x2)
    s_star = 0.5 * (lo + hi)
    return float(s_star), float(dist(s_star))


def max_feasible_radius(base: TriangulatedMetric) -> float:
    """Largest max-norm ball radius around base whose corners stay valid."""
    lo, hi = 0.0, PI
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _ball_corners_valid(base, mid):
            lo = mid
        else:
            hi = mid
    return lo


def _ball_corners_valid(base: TriangulatedMetric, radius: float) -> bool:
    x = np.array(base.lengths())
    for mask in range(64):
        signs = np.array([1.0 if mask & (1 << i) else -1.0 for i in range(6)])
        if not _is_valid_lengths(x + radius * signs):
            return False
    return True


def rigidity_scan(p: GluedFootballParams, radius: float = 0.05,
                  n_samples: int = 500, seed: int = 7,
                  opts: GaussNewtonOptions | None = None,
                  dist_tol: float = 1e-6,
                  rank_tol: float = 1e-6,
                  workers: int = 1) -> RigidityReport:
    """Multistart probe of local rigidity around one glued football.

    Draws n_samples starts uniformly in the max-norm ball of the given
    radius, projects each with gauss_newton and reports the Jacobian
    spectrum at the base point, convergence counts and the largest family
    distance among converged solutions.  Deterministic for a fixed seed.
    """
    opts = opts or GaussNewtonOptions()
    base = glued_football(p)
    if not _ball_corners_valid(base, radius):
        feasible = max_feasible_radius(base)
        raise ValueError(
            f"radius {radius!r} leaves the validity region; "
            f"max feasible radius here is {feasible:.6f}")
    J = jacobian(base, p.spec, h=opts.fd_step)
    rank, svals = numerical_rank(J, rank_tol)
    rng = np.random.default_rng(seed)
    offsets = rng.uniform(-radius, radius, size=(n_samples, 6))
    starts = [TriangulatedMetric(*(np.array(base.lengths()) + off))
              for off in offsets]
    jobs = [(s, p.spec, opts) for s in starts]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_one, jobs, chunksize=16))
    else:
        results = [_solve_one(job) for job in jobs]
    solutions = []
    boundary = 0
    nonconv = 0
    max_dist = 0.0
    for res in results:
        if res.status == "converged":
            s_star, dist = family_distance(res.metric, p.spec)
            solutions.append((res.metric.lengths(), res.residual_norm,
                              s_star, dist))
            max_dist = max(max_dist, dist)
        elif res.status == "boundary":
            boundary += 1
        else:
            nonconv += 1
    return RigidityReport(
        spec=p.spec, t=p.t, radius=radius, seed=seed,
        singular_values=tuple(float(s) for s in svals),
        kernel_dim=6 - rank,
        starts=n_samples,
        converged=len(solutions),
        boundary_failures=boundary,
        nonconverged=nonconv,
        max_family_distance=max_dist,
        dist_tol=dist_tol,
        solutions=tuple(solutions),
    )


def _solve_one(job) -> GaussNewtonResult:
    start, spec, opts = job
    return gauss_newton(start, spec, opts)


@dataclass(frozen=True)
class ScanClosure:
    """Closure rule for defect_scan.

    The D-part apex targets are (alpha - 2*eps) for the slit triangle at D1
    and (beta + 2*eps) at D2; l5 and l6 follow from (l3, l4) by the cosine
    law, then l1 and l2 are solved so the A- and B-apexes hit their targets
    exactly.  branch picks l1, l2 acute or obtuse (the two perturbation
    regimes).  Only the C-defect remains free.
    """

    eps: float = 0.0
    branch: str = "acute"

    def __post_init__(self):
        if self.branch not in ("acute", "obtuse"):
            raise ValueError(f"branch must be 'acute' or 'obtuse', got {self.branch!r}")


def defect_scan(spec: ConeAngleSpec, l3_grid, l4_grid,
                closure: ScanClosure | None = None) -> list[ScanRow]:
    """C-defect over a (l3, l4) grid with the other constraints closed exactly.

    Rows appear in lexicographic (l3, l4) order; infeasible nodes are
    emitted with feasible=False rather than dropped.
    """
    closure = closure or ScanClosure()
    alpha, beta = spec.alpha, spec.beta
    d1 = alpha - 2.0 * closure.eps
    d2 = beta + 2.0 * closure.eps
    if not (0.0 < d1 < PI and 0.0 < d2 < PI):
        raise ValueError(f"eps = {closure.eps!r} drives a D-apex out of (0, pi)")
    rows: list[ScanRow] = []
    for l3 in l3_grid:
        for l4 in l4_grid:
            row = _scan_node(spec, float(l3), float(l4), d1, d2, closure.branch)
            rows.append(row)
    return rows


def _scan_node(spec, l3, l4, d1, d2, branch) -> ScanRow:
    infeasible = ScanRow(None, None, l3, l4, None, None,
                         None, None, None, None, False)
    if not (0.0 < l3 < PI and 0.0 < l4 < PI):
        return infeasible
    l5 = side_from_sas(l3, l4, d1)
    l6 = side_from_sas(l4, l3, d2)
    s1 = math.sin(0.5 * l5) / math.sin(0.5 * spec.alpha)
    s2 = math.sin(0.5 * l6) / math.sin(0.5 * spec.beta)
    if s1 > 1.0 or s2 > 1.0 or s1 <= 0.0 or s2 <= 0.0:
        return infeasible
    l1 = clamped_asin(s1)
    l2 = clamped_asin(s2)
    if branch == "obtuse":
        l1, l2 = PI - l1, PI - l2
    m = TriangulatedMetric(l1, l2, l3, l4, l5, l6)
    if not validate(m).is_valid:
        return infeasible
    r = _residual_vector(np.array(m.lengths()), spec)
    return ScanRow(l1, l2, l3, l4, l5, l6,
                   float(r[0]), float(r[1]), float(r[2]), float(r[3]), True)
