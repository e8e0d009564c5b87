"""Deciding "can T_start become T_end in exactly k flips", parameterized by k.

The search splits k into compositions (k_1, ..., k_t).  Each part k_i is one
iteration: pick a start edge, then execute 2k_i - 1 actions against a stack of
edges (the walk).  A Move(d) pushes the d-th neighbor of the current top edge;
a FlipBack flips the top and pops.  Iterations perform exactly k_i flips, the
last action is always a FlipBack, and no prefix before the final action may
contain more FlipBacks than Moves, so the stack never underflows.

Start edges are not branched over.  Each iteration takes the next edge from a
cursor over the lexicographically ordered "necessary" edges (edges of the
current triangulation missing from the target); when the cursor runs off the
end, the ordering is rebuilt from the current triangulation and the cursor
restarts.  An empty rebuild kills the branch.

The exactly-k search is sound for every k and complete when k is the true flip
distance, which is what ``flip_distance_upto`` exploits: it asks k' = 0, 1,
..., k_max in turn and the first YES is the distance.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from . import _kernel
from ._searchpure import Accept as _Accept
from .errors import EdgeAbsent, PointSetMismatch, ValidationError
from .flipdag import FlipSequence, replay
from .triangulation import (
    Edge,
    FlipRecord,
    Triangulation,
    edge_neighbors,
    flip,
    is_flippable,
    make_edge,
)


@dataclass(frozen=True)
class Move:
    """Push the direction-th neighbor of the current edge."""

    direction: int

    def __post_init__(self):
        if not 0 <= self.direction <= 3:
            raise ValidationError(f"move direction {self.direction} outside 0..3")

    def __str__(self) -> str:
        return f"M{self.direction}"


@dataclass(frozen=True)
class FlipBack:
    """Flip the current edge and pop back to the previous one."""

    def __str__(self) -> str:
        return "F"


Action = Union[Move, FlipBack]
FLIP_BACK = FlipBack()
_MOVES = (Move(0), Move(1), Move(2), Move(3))


@dataclass(frozen=True)
class IterationShape:
    """The action string of one iteration: k_i FlipBacks interleaved with
    k_i - 1 Moves, FlipBack last, and Moves never outnumbered in any prefix
    before the final action."""

    actions: tuple[Action, ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        flips = sum(isinstance(x, FlipBack) for x in self.actions)
        if flips != len(self.actions) - flips + 1:
            raise ValidationError("shape needs exactly one more FlipBack than Moves")
        if not isinstance(self.actions[-1], FlipBack):
            raise ValidationError("shape must end with a FlipBack")
        lead = 0
        for x in self.actions[:-1]:
            lead += 1 if isinstance(x, Move) else -1
            if lead < 0:
                raise ValidationError("prefix with more FlipBacks than Moves")

    @property
    def k(self) -> int:
        return (len(self.actions) + 1) // 2

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.actions)


@dataclass(frozen=True)
class Composition:
    """An ordered split (k_1, ..., k_t) of the flip budget, every part >= 1."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if any(p < 1 for p in self.parts):
            raise ValidationError(f"composition parts must be positive: {self.parts}")

    @property
    def k(self) -> int:
        return sum(self.parts)


def compositions(k: int) -> Iterator[Composition]:
    """All 2^(k-1) compositions of k, lexicographic by parts."""
    if k < 1:
        raise ValidationError(f"compositions need k >= 1, got {k}")

    def rec(rest: int):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    for parts in rec(k):
        yield Composition(parts)


def iteration_shapes(k_i: int) -> Iterator[IterationShape]:
    """Every valid shape for one iteration of k_i flips, in the search's
    deterministic order: Move(0) < Move(1) < Move(2) < Move(3) < FlipBack at
    each position.  There are Catalan(k_i - 1) * 4^(k_i - 1) of them."""
    if k_i < 1:
        raise ValidationError(f"iteration shapes need k_i >= 1, got {k_i}")

    def rec(m: int, f: int, prefix: list[Action]):
        if f == k_i:
            yield IterationShape(tuple(prefix))
            return
        if m < k_i - 1:
            for mv in _MOVES:
                prefix.append(mv)
                yield from rec(m + 1, f, prefix)
                prefix.pop()
        if f < m or (m == k_i - 1 and f == k_i - 1):
            prefix.append(FLIP_BACK)
            yield from rec(m, f + 1, prefix)
            prefix.pop()

    yield from rec(0, 0, [])


def transform(tri: Triangulation, start: Edge,
              shape: IterationShape) -> Optional[tuple[Triangulation, list[FlipRecord]]]:
    """Reference executor for one iteration, on full Triangulation values.

    Returns the resulting triangulation and the flips made, or None when the
    shape is infeasible from this start edge: a Move direction beyond the
    neighbor count, a FlipBack on an unflippable edge, or a pop exposing an
    edge that has since been flipped away.
    """
    start = make_edge(*start)
    if start not in tri.edges:
        raise EdgeAbsent(f"start edge {start} not in triangulation")
    cur = tri
    stack = [start]
    flips: list[FlipRecord] = []
    for action in shape.actions:
        top = stack[-1]
        if isinstance(action, Move):
            nbrs = edge_neighbors(cur, top)
            if action.direction >= len(nbrs):
                return None
            stack.append(nbrs[action.direction])
        else:
            if not is_flippable(cur, top):
                return None
            cur, rec = flip(cur, top)
            flips.append(rec)
            stack.pop()
            if stack and stack[-1] not in cur.edges:
                return None
    return cur, flips


@dataclass(frozen=True)
class SolveResult:
    """An accepting run: the witness flip sequence plus how the search found
    it (composition, per-iteration start edges and action shapes)."""

    k: int
    composition: Composition
    sequence: FlipSequence
    starts: tuple[Edge, ...]
    shapes: tuple[IterationShape, ...]


def _code_action(code: int) -> Action:
    return _MOVES[code] if code < 4 else FLIP_BACK


def _package(t_start: Triangulation, t_end: Triangulation, k: int,
             comp: Composition, accept: _Accept) -> SolveResult:
    raw_flips, raw_starts, raw_actions = accept
    recs = tuple(FlipRecord(underlying=(a, b), resulting=(c, d)) for a, b, c, d in raw_flips)
    shapes = tuple(IterationShape(tuple(_code_action(c) for c in acts)) for acts in raw_actions)
    result = SolveResult(
        k=k,
        composition=comp,
        sequence=FlipSequence(start=t_start, flips=recs),
        starts=tuple((a, b) for a, b in raw_starts),
        shapes=shapes,
    )
    # accept-time invariants: exactly k flips, action budget <= 2k, replayable
    assert len(recs) == k, "accepting run must flip exactly k times"
    assert sum(len(s.actions) for s in shapes) <= 2 * k, "action budget exceeded"
    assert replay(result.sequence) == t_end, "witness does not replay to the target"
    return result


def _run_task(backend: str, prep, parts):
    return _kernel.kernel_for(backend)(prep, parts)


def _scan_parallel(backend: str, prep, comps: list[Composition],
                   workers: int) -> tuple[Optional[int], Optional[object]]:
    """Run compositions concurrently but keep the single-worker answer: the
    lexicographically first accepting composition wins, so results are
    consumed in submission order."""
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_task, backend, prep, c.parts) for c in comps]
        try:
            for i, fut in enumerate(futures):
                res = fut.result()
                if res is not None:
                    return i, res
        finally:
            for fut in futures:
                fut.cancel()
    return None, None


def _check_pair(t_start: Triangulation, t_end: Triangulation) -> None:
    if t_start.ps != t_end.ps:
        raise PointSetMismatch("triangulations are over different point sets")


def search_exact(t_start: Triangulation, t_end: Triangulation, k: int,
                 workers: Optional[int] = None,
                 backend: Optional[str] = None) -> Optional[SolveResult]:
    """A witness using exactly k flips, or None if this search finds none.

    Sound for every k.  Complete when k is the true flip distance, so scan
    k upward (see flip_distance_upto) to compute distances.
    """
    _check_pair(t_start, t_end)
    if k < 0:
        raise ValidationError(f"negative flip budget {k}")
    if k == 0:
        if t_start.edges == t_end.edges:
            return SolveResult(k=0, composition=Composition(()),
                               sequence=FlipSequence(start=t_start, flips=()),
                               starts=(), shapes=())
        return None

    prep = _kernel.make_prep(t_start, t_end)
    name = _kernel.resolve_backend(len(t_start.ps), backend)
    comps = list(compositions(k))
    if workers is not None and workers > 1 and len(comps) > 1:
        idx, accept = _scan_parallel(name, prep, comps, workers)
    else:
        run = _kernel.kernel_for(name)
        idx, accept = None, None
        for i, comp in enumerate(comps):
            res = run(prep, comp.parts)
            if res is not None:
                idx, accept = i, res
                break
    if accept is None:
        return None
    return _package(t_start, t_end, k, comps[idx], accept)


def exists_sequence(t_start: Triangulation, t_end: Triangulation, k: int,
                    workers: Optional[int] = None,
                    backend: Optional[str] = None) -> bool:
    """True iff the search finds a sequence of exactly k flips from start to
    end (k = 0 means they are already equal)."""
    return search_exact(t_start, t_end, k, workers=workers, backend=backend) is not None


def search_upto(t_start: Triangulation, t_end: Triangulation, k_max: int,
                workers: Optional[int] = None,
                backend: Optional[str] = None) -> Optional[SolveResult]:
    """The witness for the smallest k' <= k_max with a YES, or None."""
    _check_pair(t_start, t_end)
    if k_max < 0:
        raise ValidationError(f"negative flip budget {k_max}")
    for k in range(k_max + 1):
        res = search_exact(t_start, t_end, k, workers=workers, backend=backend)
        if res is not None:
            return res
    return None


def flip_distance_upto(t_start: Triangulation, t_end: Triangulation, k_max: int,
                       workers: Optional[int] = None,
                       backend: Optional[str] = None) -> Optional[int]:
    """The flip distance if it is <= k_max, else None."""
    res = search_upto(t_start, t_end, k_max, workers=workers, backend=backend)
    return None if res is None else res.k


def decide_equals(t_start: Triangulation, t_end: Triangulation, k: int,
                  workers: Optional[int] = None,
                  backend: Optional[str] = None) -> bool:
    """True iff the flip distance equals k exactly."""
    return flip_distance_upto(t_start, t_end, k, workers=workers, backend=backend) == k
