"""Exact integer predicates over planar point sets.

All tests reduce to the sign of a 2x2 cross-product determinant.  With
coordinates capped at 2^30 in absolute value the determinant of any three
points fits comfortably in a signed 64-bit word, so every predicate here is
exact (this also keeps the compiled kernel overflow-free).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError

# Keeps 3-point determinants within 2^62 < 2^63 - 1.
COORD_BOUND = 2**30


@dataclass(frozen=True)
class Point:
    """A planar point with a dense 0-based id and exact integer coordinates."""

    id: int
    x: int
    y: int


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of (q - p) x (r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def strictly_convex_quad(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the quadrilateral a,b,c,d (given in cyclic order) is strictly convex.

    All four consecutive orientation triples must agree on a nonzero sign;
    any collinear triple disqualifies.
    """
    s = orient(a, b, c)
    if s == 0:
        return False
    return orient(b, c, d) == s and orient(c, d, a) == s and orient(d, a, b) == s


def segments_properly_cross(e1: tuple[Point, Point], e2: tuple[Point, Point]) -> bool:
    """True iff the open segments intersect; touching at endpoints does not count."""
    a, b = e1
    c, d = e2
    if orient(a, b, c) * orient(a, b, d) >= 0:
        return False
    return orient(c, d, a) * orient(c, d, b) < 0


class PointSet:
    """An ordered, validated collection of points in general position.

    Validation enforces: n >= 3, coordinates within +-2^30, all coordinate
    pairs distinct, and no three points collinear (checked in O(n^3)).
    Degenerate inputs are rejected outright because flips across collinear
    quadrilaterals are undefined.
    """

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point]):
        pts = tuple(points)
        if len(pts) < 3:
            raise ValidationError(f"need at least 3 points, got {len(pts)}")
        for i, p in enumerate(pts):
            if p.id != i:
                raise ValidationError(f"point ids must be dense 0..n-1; index {i} has id {p.id}")
            if abs(p.x) > COORD_BOUND or abs(p.y) > COORD_BOUND:
                raise ValidationError(f"point {i} coordinate exceeds +-2^30")
        seen: dict[tuple[int, int], int] = {}
        for p in pts:
            key = (p.x, p.y)
            if key in seen:
                raise ValidationError(f"points {seen[key]} and {p.id} coincide at {key}")
            seen[key] = p.id
        n = len(pts)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if orient(pts[i], pts[j], pts[k]) == 0:
                        raise ValidationError(f"points {i}, {j}, {k} are collinear")
        self.points = pts

    @classmethod
    def from_coords(cls, coords: Sequence[tuple[int, int]]) -> "PointSet":
        return cls(Point(i, int(x), int(y)) for i, (x, y) in enumerate(coords))

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({len(self.points)} points)"

    def coords(self) -> list[tuple[int, int]]:
        return [(p.x, p.y) for p in self.points]


def convex_hull_edges(ps: PointSet) -> set[tuple[int, int]]:
    """Edges of the convex hull of ``ps`` as canonical ``(a, b)`` index pairs, a < b.

    Andrew's monotone chain on the exact orientation predicate.  General
    position means no collinear hull chains, so the hull is unambiguous.
    """
    pts = sorted(ps.points, key=lambda p: (p.x, p.y))
    if len(pts) == 3:
        ids = sorted(p.id for p in pts)
        return {(ids[0], ids[1]), (ids[0], ids[2]), (ids[1], ids[2])}

    def half_chain(ordered: list[Point]) -> list[Point]:
        chain: list[Point] = []
        for p in ordered:
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half_chain(pts)
    upper = half_chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    edges = set()
    for i, p in enumerate(hull):
        q = hull[(i + 1) % len(hull)]
        edges.add((p.id, q.id) if p.id < q.id else (q.id, p.id))
    return edges
