"""Cone-angle bookkeeping: conic Euler characteristic and the odd-lattice distance.

Normalized cone angles are beta_j = (cone angle)/(2*pi).  Spherical cone
metrics on the sphere require the L1 distance from beta_vec - 1 to the set
of integer vectors with odd coordinate sum to be at least 1; the glued
football family sits exactly on that boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .metric import ConeAngleSpec


@dataclass(frozen=True)
class AngleVector:
    """Normalized cone angles beta_j > 0 (cone angle = 2*pi*beta_j)."""

    beta_vec: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "beta_vec", tuple(float(b) for b in self.beta_vec))
        for j, b in enumerate(self.beta_vec):
            if b <= 0.0:
                raise ValueError(f"beta_vec[{j}] = {b!r} not positive")

    @classmethod
    def from_spec(cls, spec: ConeAngleSpec) -> "AngleVector":
        return cls(spec.normalized())


def chi(v: AngleVector, euler_base: int = 2) -> float:
    """Conic Euler characteristic: euler_base + sum(beta_j - 1)."""
    return euler_base + sum(b - 1.0 for b in v.beta_vec)


def mp_distance(v: AngleVector, parity: str = "sum") -> float:
    """L1 distance from beta_vec - 1 to the odd integer lattice.

    parity="sum" (the cited convention) uses integer vectors with odd
    coordinate sum: round each coordinate, then if the rounded sum is even
    flip the single coordinate whose flip costs least, ties broken at the
    lowest index.  parity="all" uses vectors with every coordinate odd and
    is provided for comparison only.
    """
    x = [b - 1.0 for b in v.beta_vec]
    if parity == "all":
        # Nearest odd integer, coordinate by coordinate.
        return math.fsum(abs(xi - (round((xi - 1.0) / 2.0) * 2 + 1))
                         for xi in x)
    if parity != "sum":
        raise ValueError(f"parity must be 'sum' or 'all', got {parity!r}")
    rounded = [round(xi) for xi in x]
    if sum(rounded) % 2 != 0:
        return math.fsum(abs(xi - mi) for xi, mi in zip(x, rounded))
    # Flipping coordinate j to its second-nearest integer raises the cost
    # by 1 - 2*|x_j - m_j|; pick the cheapest flip, lowest index on ties.
    best_j = 0
    best_extra = None
    for j, (xi, mi) in enumerate(zip(x, rounded)):
        extra = 1.0 - 2.0 * abs(xi - mi)
        if best_extra is None or extra < best_extra:
            best_j, best_extra = j, extra
    xj, mj = x[best_j], rounded[best_j]
    rounded[best_j] = mj + 1 if xj >= mj else mj - 1
    # fsum keeps the result identical to the enumeration oracle even when
    # a mathematically tied lattice point sums in a different order.
    return math.fsum(abs(xi - mi) for xi, mi in zip(x, rounded))


def mp_distance_bruteforce(v: AngleVector, parity: str = "sum",
                           radius: int = 2) -> float:
    """Exhaustive-search oracle for mp_distance over a bounded integer box.

    Enumerates every integer vector within ``radius`` of the rounded
    coordinates (the L1 minimizer never strays further than one flip) and
    keeps the admissible minimum.  Exponential in the dimension; intended
    for cross-checks at small k.
    """
    if parity not in ("sum", "all"):
        raise ValueError(f"parity must be 'sum' or 'all', got {parity!r}")
    x = [b - 1.0 for b in v.beta_vec]
    k = len(x)
    centers = [round(xi) for xi in x]
    best = None
    ranges = [range(c - radius, c + radius + 1) for c in centers]
    import itertools
    for m in itertools.product(*ranges):
        if parity == "sum" and sum(m) % 2 == 0:
            continue
        if parity == "all" and any(mi % 2 == 0 for mi in m):
            continue
        cost = math.fsum(abs(xi - mi) for xi, mi in zip(x, m))
        if best is None or cost < best:
            best = cost
    return best
