"""Shared fixtures: small canonical point sets and triangulation helpers."""

from collections import deque

import pytest

from flipdist.geometry import PointSet
from flipdist.instances import gen_convex, initial_triangulation
from flipdist.triangulation import Triangulation, build, canonical_key, flip, is_flippable

# unit square scaled to keep things integral
SQUARE_COORDS = [(0, 0), (4, 0), (4, 4), (0, 4)]

# a triangle with one interior point: the unique triangulation of these four
# points has no flippable edge at all
PINNED_COORDS = [(0, 0), (10, 0), (5, 9), (5, 3)]


@pytest.fixture
def square_ps() -> PointSet:
    return PointSet.from_coords(SQUARE_COORDS)


@pytest.fixture
def square_tris(square_ps) -> tuple[Triangulation, Triangulation]:
    """The two triangulations of the square: diagonal (0,2) and diagonal (1,3)."""
    hull = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return build(square_ps, hull + [(0, 2)]), build(square_ps, hull + [(1, 3)])


@pytest.fixture
def pinned_ps() -> PointSet:
    return PointSet.from_coords(PINNED_COORDS)


@pytest.fixture
def pinned_tri(pinned_ps) -> Triangulation:
    return build(pinned_ps, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])


def convex_pair(n: int) -> tuple[PointSet, Triangulation]:
    ps = gen_convex(n)
    return ps, initial_triangulation(ps)


def flip_closure(seed: Triangulation) -> list[Triangulation]:
    """Every triangulation of seed's point set, in canonical key order."""
    seen = {canonical_key(seed): seed}
    frontier = deque([seed])
    while frontier:
        tri = frontier.popleft()
        for e in sorted(tri.edges):
            if is_flippable(tri, e):
                nxt, _ = flip(tri, e)
                key = canonical_key(nxt)
                if key not in seen:
                    seen[key] = nxt
                    frontier.append(nxt)
    return [seen[key] for key in sorted(seen)]
