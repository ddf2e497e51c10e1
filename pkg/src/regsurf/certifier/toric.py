"""Degree of a toric surface from its lattice points (normalized hull area / lattice index)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import hermite_rows


@dataclass(frozen=True)
class ToricDegree:
    normalized_volume: int
    lattice_index: int
    candidate_degree: Fraction
    asserted: bool  # only when the index is 1

    @property
    def degree(self) -> int | None:
        return int(self.candidate_degree) if self.asserted else None


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Vertices of the planar hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) < 3:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def normalized_area(points) -> int:
    """2! times the area of the hull, exactly (shoelace on the hull vertices)."""
    hull = convex_hull(points)
    if len(hull) < 3:
        raise ValueError("points are collinear; the hull has no area")
    twice = 0
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        twice += x0 * y1 - x1 * y0
    return abs(twice)


def lattice_index(points) -> int:
    """Index in Z^n of the lattice spanned by differences of the points."""
    pts = [tuple(p) for p in points]
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    H = hermite_rows(diffs)
    n = len(base)
    if len(H) < n:
        raise ValueError("differences do not span the ambient lattice")
    idx = 1
    for r in H:
        idx *= next(a for a in r if a)
    return idx


def toric_degree(points) -> ToricDegree:
    pts = list({tuple(p) for p in points})
    if not pts or len(pts[0]) != 2:
        raise ValueError("toric_degree handles planar point sets (surfaces) only")
    vol = normalized_area(pts)
    idx = lattice_index(sorted(pts))
    return ToricDegree(vol, idx, Fraction(vol, idx), idx == 1)
