"""Search kernel selection: compiled extension when available, else pure Python.

The env var FLIPDIST_BACKEND (auto | pure | compiled) overrides the default,
and callers may pass the same strings explicitly.  The compiled kernel indexes
edges as a * n + b in flat arrays, so it is capped at COMPILED_MAX_POINTS;
larger point sets silently fall back to the dict-based pure kernel.
"""

from __future__ import annotations

import os
from typing import Callable, Optional

from . import _searchpure
from .triangulation import Triangulation

try:
    from . import _core
except ImportError:
    _core = None

COMPILED_MAX_POINTS = 1024

RunFn = Callable[[_searchpure.Prep, tuple[int, ...]], Optional[_searchpure.Accept]]


def compiled_available() -> bool:
    return _core is not None


def resolve_backend(n: int, override: Optional[str] = None) -> str:
    """The backend name to use for an n-point search."""
    mode = override if override is not None else os.environ.get("FLIPDIST_BACKEND", "auto")
    if mode == "pure":
        return "pure"
    if mode == "compiled":
        if _core is None:
            raise RuntimeError("compiled backend requested but the extension is not built")
        if n > COMPILED_MAX_POINTS:
            raise RuntimeError(f"compiled backend capped at {COMPILED_MAX_POINTS} points, got {n}")
        return "compiled"
    if mode != "auto":
        raise ValueError(f"unknown backend {mode!r}, expected auto, pure, or compiled")
    if _core is not None and n <= COMPILED_MAX_POINTS:
        return "compiled"
    return "pure"


def kernel_for(name: str) -> RunFn:
    if name == "compiled":
        if _core is None:
            raise RuntimeError("compiled backend is not built")
        return _core.run_composition
    if name == "pure":
        return _searchpure.run_composition
    raise ValueError(f"unknown backend {name!r}")


def make_prep(t_start: Triangulation, t_end: Triangulation) -> _searchpure.Prep:
    """Flatten a start/target pair to the plain picklable tuple the kernels
    consume.  Start edges are emitted sorted; the kernels rely on that for the
    initial ordering of necessary edges."""
    ps = t_start.ps
    n = len(ps)
    xs = tuple(p.x for p in ps)
    ys = tuple(p.y for p in ps)
    edges = []
    for a, b in sorted(t_start.edges):
        apexes = sorted(v for t in t_start.tri_of[(a, b)] for v in t if v != a and v != b)
        c, d = (apexes[0], -1) if len(apexes) == 1 else apexes
        edges.append((a, b, c, d))
    return (n, xs, ys, tuple(edges), tuple(sorted(t_end.edges)))
