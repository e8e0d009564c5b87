"""Brute-force ground truth for flip distance.

Breadth-first search over the flip graph, whose vertices are the
triangulations of the point set and whose edges are single flips.  The graph
is connected, so BFS from any seed reaches everything; it is also
combinatorially explosive, which is why ``bfs_distance`` takes a hard depth
cap instead of running unbounded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import PointSetMismatch
from .flipdag import FlipSequence
from .geometry import PointSet
from .triangulation import FlipRecord, Triangulation, canonical_key, flip, is_flippable


@dataclass(frozen=True)
class FlipGraphStats:
    """Order, exact diameter, and the ordered-pair distance histogram of a
    flip graph.  The histogram counts all order^2 pairs, distance 0 included."""

    order: int
    diameter: int
    distance_histogram: dict[int, int]


def _neighbors(tri: Triangulation) -> list[tuple[Triangulation, FlipRecord]]:
    # sorted edge order keeps BFS witnesses deterministic
    out = []
    for e in sorted(tri.edges):
        if is_flippable(tri, e):
            out.append(flip(tri, e))
    return out


def bfs_distance(t_start: Triangulation, t_end: Triangulation,
                 cap: int) -> Optional[tuple[int, FlipSequence]]:
    """Exact flip distance with one shortest witness, or None if it exceeds cap.

    Deduplicates on canonical edge-set keys; parent pointers reconstruct the
    witness sequence.
    """
    if t_start.ps != t_end.ps:
        raise PointSetMismatch("triangulations are over different point sets")
    target = canonical_key(t_end)
    start_key = canonical_key(t_start)
    if start_key == target:
        return 0, FlipSequence(start=t_start, flips=())

    # key -> (parent key, flip that got here from the parent)
    seen: dict[bytes, Optional[tuple[bytes, FlipRecord]]] = {start_key: None}
    frontier: deque[tuple[Triangulation, int]] = deque([(t_start, 0)])
    found_depth: Optional[int] = None
    while frontier:
        tri, depth = frontier.popleft()
        if depth >= cap:
            break
        for nxt, rec in _neighbors(tri):
            key = canonical_key(nxt)
            if key in seen:
                continue
            seen[key] = (canonical_key(tri), rec)
            if key == target:
                found_depth = depth + 1
                frontier.clear()
                break
            frontier.append((nxt, depth + 1))
    if found_depth is None:
        return None

    recs: list[FlipRecord] = []
    key = target
    while key != start_key:
        parent_key, rec = seen[key]  # type: ignore[misc]
        recs.append(rec)
        key = parent_key
    recs.reverse()
    return found_depth, FlipSequence(start=t_start, flips=tuple(recs))


def _closure(seed: Triangulation) -> dict[bytes, Triangulation]:
    out = {canonical_key(seed): seed}
    frontier = deque([seed])
    while frontier:
        tri = frontier.popleft()
        for nxt, _ in _neighbors(tri):
            key = canonical_key(nxt)
            if key not in out:
                out[key] = nxt
                frontier.append(nxt)
    return out


def enumerate_all(ps: PointSet, seed_tri: Triangulation) -> list[bytes]:
    """Canonical keys of every triangulation of ps (flip closure of the seed),
    sorted for determinism."""
    if seed_tri.ps != ps:
        raise PointSetMismatch("seed triangulation is over a different point set")
    return sorted(_closure(seed_tri))


def graph_stats(ps: PointSet, seed_tri: Triangulation) -> FlipGraphStats:
    """Order, diameter, and distance histogram by all-pairs BFS over the full
    flip graph.  Feasible for small point sets only."""
    if seed_tri.ps != ps:
        raise PointSetMismatch("seed triangulation is over a different point set")
    nodes = _closure(seed_tri)
    adjacency: dict[bytes, list[bytes]] = {
        key: [canonical_key(nxt) for nxt, _ in _neighbors(tri)]
        for key, tri in nodes.items()
    }

    histogram: dict[int, int] = {}
    diameter = 0
    for source in adjacency:
        dist = {source: 0}
        frontier = deque([source])
        while frontier:
            key = frontier.popleft()
            for other in adjacency[key]:
                if other not in dist:
                    dist[other] = dist[key] + 1
                    frontier.append(other)
        assert len(dist) == len(adjacency), "flip graph must be connected"
        for d in dist.values():
            histogram[d] = histogram.get(d, 0) + 1
            diameter = max(diameter, d)
    return FlipGraphStats(order=len(nodes), diameter=diameter, distance_histogram=histogram)
