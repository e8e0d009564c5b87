"""Flip sequences and their dependency DAG.

A flip sequence F = <f_1, ..., f_r> applied to a start triangulation visits
intermediates T_0, ..., T_r.  The dependency DAG has one node per flip and an
arc i -> j (i < j) when flip j cannot be moved before flip i: either the edge
created by f_i is the edge removed by f_j, or those two edges share a triangle
of T_{j-1}, provided the created edge survives untouched strictly between the
two flips.  Every topological order of this DAG replays to the same endpoint,
which is what ``check_reordering`` verifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidAt, ValidationError
from .triangulation import Edge, FlipRecord, Triangulation, flip, is_flippable


@dataclass(frozen=True)
class FlipSequence:
    """A start triangulation plus an ordered list of flips to apply to it."""

    start: Triangulation
    flips: tuple[FlipRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "flips", tuple(self.flips))

    def __len__(self) -> int:
        return len(self.flips)


@dataclass(frozen=True)
class FlipDag:
    """Dependency DAG over flip indices 0..node_count-1; arcs point forward
    in sequence order, so acyclicity is structural."""

    node_count: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        for i, j in self.arcs:
            if not 0 <= i < j < self.node_count:
                raise ValidationError(f"arc ({i}, {j}) not forward within {self.node_count} nodes")


def intermediates(seq: FlipSequence) -> list[Triangulation]:
    """All of T_0..T_r.  Raises InvalidAt(i) at the first flip whose edge is
    not flippable or whose recorded result disagrees with the actual flip."""
    out = [seq.start]
    for i, rec in enumerate(seq.flips):
        cur = out[-1]
        if rec.underlying not in cur.edges or not is_flippable(cur, rec.underlying):
            raise InvalidAt(i, f"edge {rec.underlying} not flippable")
        nxt, actual = flip(cur, rec.underlying)
        if actual.resulting != rec.resulting:
            raise InvalidAt(i, f"flip yields {actual.resulting}, record says {rec.resulting}")
        out.append(nxt)
    return out


def replay(seq: FlipSequence) -> Triangulation:
    """The endpoint after applying the whole sequence."""
    return intermediates(seq)[-1]


def _share_triangle(tri: Triangulation, e1: Edge, e2: Edge) -> bool:
    if e1 not in tri.edges or e2 not in tri.edges:
        return False
    return not set(tri.tri_of[e1]).isdisjoint(tri.tri_of[e2])


def build_dag(seq: FlipSequence) -> FlipDag:
    """Arcs i -> j exactly where flip j depends on flip i (see module doc).

    The created-edge/removed-edge interaction is tested on the replayed
    intermediate T_{j-1}; one replay pass caches all intermediates.
    """
    steps = intermediates(seq)
    r = len(seq.flips)

    # next_flip[i]: first p > i that flips the edge created by flip i (r if none)
    next_flip = [r + 1] * r
    for i in range(r):
        created = seq.flips[i].resulting
        next_flip[i] = next(
            (p for p in range(i + 1, r) if seq.flips[p].underlying == created), r + 1)

    arcs = set()
    for j in range(r):
        removed = seq.flips[j].underlying
        for i in range(j):
            if next_flip[i] == j:
                arcs.add((i, j))
            elif next_flip[i] > j and _share_triangle(steps[j], seq.flips[i].resulting, removed):
                arcs.add((i, j))
    return FlipDag(node_count=r, arcs=frozenset(arcs))


def topological_sorts_sample(dag: FlipDag, count: int, seed: int) -> list[list[int]]:
    """`count` seeded random topological orders of the DAG (repeats allowed)."""
    succs: dict[int, list[int]] = {i: [] for i in range(dag.node_count)}
    base_indeg = [0] * dag.node_count
    for i, j in sorted(dag.arcs):
        succs[i].append(j)
        base_indeg[j] += 1

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        indeg = list(base_indeg)
        ready = sorted(i for i in range(dag.node_count) if indeg[i] == 0)
        order = []
        while ready:
            pick = ready.pop(rng.randrange(len(ready)))
            order.append(pick)
            for j in succs[pick]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
            ready.sort()
        out.append(order)
    return out


def check_reordering(seq: FlipSequence, perm: list[int]) -> bool:
    """True iff replaying the flips in `perm` order (matching each step by its
    underlying edge) is valid throughout and lands on replay(seq)."""
    if sorted(perm) != list(range(len(seq.flips))):
        raise ValidationError("perm is not a permutation of the sequence indices")
    target = replay(seq)
    cur = seq.start
    for idx in perm:
        rec = seq.flips[idx]
        if rec.underlying not in cur.edges or not is_flippable(cur, rec.underlying):
            return False
        cur, actual = flip(cur, rec.underlying)
        if actual.resulting != rec.resulting:
            return False
    return cur == target


def to_dot(dag: FlipDag) -> str:
    """DOT dump with sequence indices as node labels, for eyeballing."""
    lines = ["digraph flipdag {"]
    lines.extend(f"  {i};" for i in range(dag.node_count))
    lines.extend(f"  {i} -> {j};" for i, j in sorted(dag.arcs))
    lines.append("}")
    return "\n".join(lines) + "\n"
