"""Triangulations of a planar point set and the edge-flip primitive.

A triangulation is stored as its canonical edge set plus the edge -> incident
triangles map.  Flipping an interior edge replaces the diagonal of the strictly
convex quadrilateral formed by its two triangles:

        c                 c
       / \               /|\
      / 1 \             / | \
     a-----b    ->     a 1|2 b        flip of (a,b) yields (c,d);
      \ 2 /             \ | /         triangles 1,2 are rebuilt, all
       \ /               \|/          others are untouched.
        d                 d

Triangulation values are immutable: ``flip`` returns a new value sharing the
point set, so search code may branch freely without undo bookkeeping.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    BadIncidence,
    BadIndex,
    EdgeAbsent,
    NotFlippable,
    NotMaximal,
    NotPlanar,
    PointSetMismatch,
    ValidationError,
)
from .geometry import PointSet, convex_hull_edges, orient, segments_properly_cross, strictly_convex_quad

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


def make_edge(a: int, b: int) -> Edge:
    """Canonical (min, max) form."""
    return (a, b) if a < b else (b, a)


def make_triangle(u: int, v: int, w: int) -> Triangle:
    return tuple(sorted((u, v, w)))  # type: ignore[return-value]


@dataclass(frozen=True)
class FlipRecord:
    """One flip: the edge removed (underlying) and the edge inserted (resulting)."""

    underlying: Edge
    resulting: Edge

    def __post_init__(self):
        involved = set(self.underlying) | set(self.resulting)
        if self.underlying == self.resulting or len(involved) != 4:
            raise ValidationError(f"degenerate flip record {self.underlying} -> {self.resulting}")

    def __str__(self) -> str:
        (a, b), (c, d) = self.underlying, self.resulting
        return f"{a}-{b} -> {c}-{d}"


class Triangulation:
    """Immutable triangulation value.  Use :func:`build` to construct one
    from raw edges; ``flip`` produces derived values directly."""

    __slots__ = ("ps", "edges", "tri_of", "triangles", "_key")

    def __init__(self, ps: PointSet, edges: frozenset[Edge], tri_of: dict[Edge, tuple[Triangle, ...]],
                 triangles: frozenset[Triangle]):
        self.ps = ps
        self.edges = edges
        self.tri_of = tri_of
        self.triangles = triangles
        self._key: Optional[bytes] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.ps == other.ps and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Triangulation({len(self.ps)} points, {len(self.edges)} edges)"


def _empty_triangle(ps: PointSet, u: int, v: int, w: int) -> bool:
    """No point of ps strictly inside triangle (u, v, w)."""
    pu, pv, pw = ps[u], ps[v], ps[w]
    if orient(pu, pv, pw) < 0:
        pv, pw = pw, pv
    for p in ps:
        if p.id in (u, v, w):
            continue
        if orient(pu, pv, p) > 0 and orient(pv, pw, p) > 0 and orient(pw, pu, p) > 0:
            return False
    return True


def build(ps: PointSet, edge_list: Iterable[Edge]) -> Triangulation:
    """Validate an edge set and assemble the full triangulation value.

    Raises BadIndex for out-of-range endpoints, NotPlanar if two edges
    properly cross, NotMaximal if the edge count differs from 3n - 3 - h,
    and BadIncidence if any edge does not bound exactly 1 (hull) or 2
    (interior) empty triangles.
    """
    n = len(ps)
    edges: set[Edge] = set()
    for a, b in edge_list:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise BadIndex(f"bad edge ({a}, {b}) for {n} points")
        edges.add(make_edge(a, b))

    hull = convex_hull_edges(ps)
    expected = 3 * n - 3 - len(hull)
    if len(edges) != expected:
        raise NotMaximal(f"{len(edges)} edges, expected 3n-3-h = {expected}")

    ordered = sorted(edges)
    for i, e1 in enumerate(ordered):
        seg1 = (ps[e1[0]], ps[e1[1]])
        for e2 in ordered[i + 1:]:
            if segments_properly_cross(seg1, (ps[e2[0]], ps[e2[1]])):
                raise NotPlanar(f"edges {e1} and {e2} cross")

    # Faces are exactly the empty triangles whose three sides are present.
    tri_of: dict[Edge, list[Triangle]] = {e: [] for e in edges}
    triangles: set[Triangle] = set()
    for a, b in ordered:
        for w in range(n):
            if w in (a, b):
                continue
            if make_edge(a, w) in edges and make_edge(b, w) in edges and _empty_triangle(ps, a, b, w):
                triangles.add(make_triangle(a, b, w))
    for tri in triangles:
        u, v, w = tri
        for e in (make_edge(u, v), make_edge(u, w), make_edge(v, w)):
            tri_of[e].append(tri)

    for e, tris in tri_of.items():
        want = 1 if e in hull else 2
        if len(tris) != want:
            raise BadIncidence(f"edge {e} bounds {len(tris)} triangles, expected {want}")
    if len(triangles) != 2 * n - 2 - len(hull):
        raise BadIncidence(f"{len(triangles)} triangles, expected 2n-2-h = {2 * n - 2 - len(hull)}")

    frozen = {e: tuple(sorted(tris)) for e, tris in tri_of.items()}
    return Triangulation(ps, frozenset(edges), frozen, frozenset(triangles))


def _require_edge(tri: Triangulation, e: Edge) -> Edge:
    e = make_edge(*e)
    if e not in tri.edges:
        raise EdgeAbsent(f"edge {e} not in triangulation")
    return e


def quad_around(tri: Triangulation, e: Edge) -> Optional[tuple[int, int]]:
    """Apex vertices (min, max) of the two triangles at an interior edge,
    or None for a hull edge."""
    e = _require_edge(tri, e)
    tris = tri.tri_of[e]
    if len(tris) == 1:
        return None
    a, b = e
    apexes = [next(v for v in t if v != a and v != b) for t in tris]
    return (min(apexes), max(apexes))


def is_flippable(tri: Triangulation, e: Edge) -> bool:
    """An edge flips iff it is interior and its quadrilateral is strictly convex."""
    quad = quad_around(tri, e)
    if quad is None:
        return False
    a, b = make_edge(*e)
    c, d = quad
    ps = tri.ps
    return strictly_convex_quad(ps[a], ps[c], ps[b], ps[d])


def flip(tri: Triangulation, e: Edge) -> tuple[Triangulation, FlipRecord]:
    """Replace diagonal e with the opposite diagonal of its quadrilateral.

    Only the two incident triangles are rebuilt; everything else is shared
    with the input value.
    """
    e = make_edge(*e)
    if not is_flippable(tri, e):
        raise NotFlippable(f"edge {e} is not flippable")
    a, b = e
    c, d = quad_around(tri, e)  # type: ignore[misc]
    new_edge = make_edge(c, d)

    gone1, gone2 = make_triangle(a, b, c), make_triangle(a, b, d)
    born1, born2 = make_triangle(a, c, d), make_triangle(b, c, d)

    tri_of = dict(tri.tri_of)
    del tri_of[e]
    tri_of[new_edge] = tuple(sorted((born1, born2)))

    def swap(side: Edge, old: Triangle, new: Triangle) -> None:
        tri_of[side] = tuple(sorted(new if t == old else t for t in tri_of[side]))

    swap(make_edge(a, c), gone1, born1)
    swap(make_edge(b, c), gone1, born2)
    swap(make_edge(a, d), gone2, born1)
    swap(make_edge(b, d), gone2, born2)

    edges = (tri.edges - {e}) | {new_edge}
    triangles = (tri.triangles - {gone1, gone2}) | {born1, born2}
    rec = FlipRecord(underlying=e, resulting=new_edge)
    return Triangulation(tri.ps, edges, tri_of, triangles), rec


def edge_neighbors(tri: Triangulation, e: Edge) -> list[Edge]:
    """The other edges of e's incident triangles, in a fixed deterministic
    order: triangles sorted by canonical triple, then the two non-e edges of
    each triangle in lexicographic order.  Length 2 for hull edges, 4 for
    interior ones.  This order is what gives move directions their meaning
    in the search, so it must never change.
    """
    e = _require_edge(tri, e)
    a, b = e
    out: list[Edge] = []
    for t in tri.tri_of[e]:  # already sorted canonically
        w = next(v for v in t if v != a and v != b)
        out.extend(sorted((make_edge(a, w), make_edge(b, w))))
    return out


def necessary_edges(tri: Triangulation, target: Triangulation) -> list[Edge]:
    """Edges of ``tri`` absent from ``target``, sorted lexicographically.
    Each of these must be flipped at some point to reach the target."""
    if tri.ps != target.ps:
        raise PointSetMismatch("triangulations are over different point sets")
    return sorted(tri.edges - target.edges)


def canonical_key(tri: Triangulation) -> bytes:
    """Content key: the sorted edge list packed to bytes.  Equal keys iff
    equal edge sets; used for BFS deduplication."""
    if tri._key is None:
        tri._key = b"".join(struct.pack("<II", a, b) for a, b in sorted(tri.edges))
    return tri._key
