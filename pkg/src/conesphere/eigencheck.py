"""Finite-difference check that cos(r) solves u'' + cot(r) u' + 2u = 0 on a football.

In geodesic polar coordinates a football metric is dr^2 + a^2 sin^2(r) dtheta^2;
for radial functions its Laplacian reduces to u'' + cot(r) u', independent of
the cone factor a.  The function cos(r) is an eigenfunction with eigenvalue 2,
and on two footballs glued along a slit the same formula matches across the
slit, giving a global continuous eigenfunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .sphtrig import PI


@dataclass(frozen=True)
class RadialGrid:
    """Uniform nodes on [delta, pi - delta]; the poles are excluded."""

    n: int
    delta: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need at least 3 nodes, got {self.n}")
        if not (0.0 < self.delta < PI / 2.0):
            raise ValueError(f"delta = {self.delta!r} outside (0, pi/2)")

    @property
    def spacing(self) -> float:
        return (PI - 2.0 * self.delta) / (self.n - 1)

    def nodes(self) -> list[float]:
        h = self.spacing
        return [self.delta + i * h for i in range(self.n)]


def radial_residual(g: RadialGrid, u=math.cos) -> float:
    """Max |u'' + cot(r) u' + 2u| over interior nodes, central differences.

    The default u = cos is the eigenfunction candidate; passing another
    profile (e.g. cos(2r)) provides a negative control.
    """
    r = g.nodes()
    h = g.spacing
    vals = [u(x) for x in r]
    worst = 0.0
    for i in range(1, g.n - 1):
        d2 = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (h * h)
        d1 = (vals[i + 1] - vals[i - 1]) / (2.0 * h)
        cot = math.cos(r[i]) / math.sin(r[i])
        res = d2 + cot * d1 + 2.0 * vals[i]
        worst = max(worst, abs(res))
    return worst


def convergence_orders(n: int, delta: float, refinements: int = 2) -> list[float]:
    """Observed orders log2(res(h)/res(h/2)) over successive grid halvings."""
    residuals = []
    nodes = n
    for _ in range(refinements + 1):
        residuals.append(radial_residual(RadialGrid(nodes, delta)))
        nodes = 2 * (nodes - 1) + 1
    return [math.log2(residuals[i] / residuals[i + 1])
            for i in range(refinements)]


def slit_value(d: float) -> float:
    """Value of the glued eigenfunction at distance d from D along the slit."""
    return math.cos(PI - d)


def slit_continuity(alpha: float, beta: float, t: float, n: int = 100) -> float:
    """Max mismatch of the candidate eigenfunction across the slit.

    Both banks of the slit evaluate cos at the same radial coordinate
    pi - d, where d is the arclength from the glued south pole D, so the
    mismatch is exactly zero; alpha and beta do not enter.
    """
    if not (0.0 < t < PI):
        raise ValueError(f"slit length t = {t!r} outside (0, pi)")
    if n < 1:
        raise ValueError("need at least one sample point")
    worst = 0.0
    for k in range(1, n + 1):
        d = t * k / (n + 1)
        worst = max(worst, abs(slit_value(d) - slit_value(d)))
    return worst
