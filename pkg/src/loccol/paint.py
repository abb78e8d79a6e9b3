"""Constructive locating colorings and the bounds they certify.

The pipeline reduces a tree to a path with the pruning operator, colors the
path optimally, then walks back up the reduction re-attaching every palm's
end-paths with fresh colors.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .coloring import Coloring, verify_locating
from .tree import (
    EndPath,
    Palm,
    ReductionTrace,
    Terminal,
    Tree,
    decompose,
    reduce,
    reduction_sequence,
)

log = logging.getLogger(__name__)


class PipelineRefused(RuntimeError):
    """The reduction did not end in a path, so there is nothing to color from."""

    def __init__(self, terminal: Terminal, trace: ReductionTrace):
        super().__init__(f"reduction ended in {terminal.value}; no path to start from")
        self.terminal = terminal
        self.trace = trace


def ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def palm_width(palm: Palm) -> int:
    return max(palm.p, ceil_sqrt(palm.l))


# -- lower bound -------------------------------------------------------------

def degree_lower_bound(t: Tree) -> int:
    """Lower bound on the locating-chromatic number from size and maximum degree.

    A graph with locating number ``k >= 3`` has maximum degree at most
    ``4 * 3**(k - 3)``.
    """
    if t.rays:
        trivial = 3
    else:
        trivial = min(t.n, 3)
    delta = t.max_degree
    deg_bound = 0
    if delta >= 3:
        deg_bound = 3
        while 4 * 3 ** (deg_bound - 3) < delta:
            deg_bound += 1
    return max(trivial, deg_bound)


# -- paths -------------------------------------------------------------------

def path_chi(t: Tree) -> int:
    """Locating-chromatic number of a (finite or infinite) path."""
    if not t.is_path():
        raise ValueError("not a path")
    if not t.rays and t.n <= 2:
        return t.n
    return 3


def _walk(t: Tree, start: int) -> list[int]:
    order, prev, cur = [start], None, start
    while True:
        nxt = [w for w in t.adj[cur] if w != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def color_path(t: Tree) -> Coloring:
    """Optimal locating coloring of a path, P_{1inf} or P_{2inf}.

    Color 3 sits at one end (the finite end for a one-ended path), and the rest
    alternates 1, 2 moving away from it.  On a two-ended path the side leaving
    through the anchor's own ray alternates 2, 1 instead.
    """
    if not t.is_path():
        raise ValueError("color_path needs a path")
    if not t.rays and t.n <= 2:
        return Coloring(t.n, tuple(range(1, t.n + 1)))

    def alt(d: int) -> int:
        return 1 if d % 2 else 2

    ends = [v for v in range(t.n) if len(t.adj[v]) <= 1]
    if t.total_rays == 1:
        anchor = next(v for v in ends if not t.ray_count(v))  if t.n > 1 else 0
    else:
        anchor = min(ends)
    order = _walk(t, anchor)
    assign = [0] * t.n
    assign[anchor] = 3
    for d, v in enumerate(order[1:], 1):
        assign[v] = alt(d)
    pats = {}
    far = order[-1]
    far_d = len(order) - 1
    if t.total_rays == 1:
        pats[(far, 0)] = (alt(far_d + 1), alt(far_d + 2))
    elif t.total_rays == 2:
        if t.n == 1:
            pats[(anchor, 0)] = (1, 2)
            pats[(anchor, 1)] = (2, 1)
        else:
            pats[(far, 0)] = (alt(far_d + 1), alt(far_d + 2))
            pats[(anchor, 0)] = (2, 1)
    return Coloring(3, tuple(assign), pats)


# -- extensions --------------------------------------------------------------

def _lift(t: Tree, sub: Coloring, vmap: dict[int, int]) -> list[int]:
    if sub.n != len(vmap) or sorted(vmap.values()) != list(range(sub.n)):
        raise ValueError("vertex map inconsistent with the sub-coloring")
    assign = [0] * t.n
    for old, new in vmap.items():
        assign[old] = sub.assignment[new]
    return assign


def _paint(t: Tree, sub: Coloring, vmap: dict[int, int], rule) -> Coloring:
    """Color every end-path vertex by ``rule(palm, j, distance, branch_color)``."""
    assign = _lift(t, sub, vmap)
    pats = {}
    for palm in decompose(t):
        cb = assign[palm.branch]
        for j, q in enumerate(palm.end_paths, 1):
            for d, v in enumerate(q.vertices, 1):
                assign[v] = rule(palm, j, d, cb)
            if q.ray is not None:
                d0 = len(q.vertices)
                pats[q.ray] = (rule(palm, j, d0 + 1, cb), rule(palm, j, d0 + 2, cb))
    k = max([sub.k, *assign, *(c for pair in pats.values() for c in pair)])
    return Coloring(k, tuple(assign), pats)


def _check_sub(t: Tree, sub: Coloring, vmap: dict[int, int]) -> Tree:
    reduced, expect = reduce(t)
    if expect != vmap:
        raise ValueError("vertex map does not match reduce(t)")
    verdict = verify_locating(reduced, sub)
    if not verdict.ok:
        raise ValueError(f"sub-coloring is not locating: {verdict}")
    return reduced


def extend_simple(t: Tree, sub: Coloring, vmap: dict[int, int]) -> Coloring:
    """Lift a locating coloring of reduce(t) to t with one new color per end-path index.

    In a palm with several end-paths the i-th one takes ``m + i`` at odd
    distance from the branch and the branch color at even distance; a lone
    end-path takes ``m + 1`` / ``m + 2``.  At most ``m + max_degree`` colors.
    """
    reduced = _check_sub(t, sub, vmap)
    if reduced is t or reduced == t:
        return sub
    m = sub.k

    def rule(palm, j, d, cb):
        if palm.l > 1:
            return m + j if d % 2 else cb
        return m + 1 if d % 2 else m + 2

    return _paint(t, sub, vmap, rule)


@dataclass(frozen=True)
class PairTable:
    base: int
    width: int
    pairs: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        cols = range(self.base + 1, self.base + self.width + 1)
        object.__setattr__(self, "pairs", tuple((a, b) for a in cols for b in cols if a != b))

    def __getitem__(self, k: int) -> tuple[int, int]:
        """1-based lookup, matching the end-path index offset j - width."""
        return self.pairs[k - 1]

    def __len__(self):
        return len(self.pairs)


def stage_width(t: Tree) -> int:
    return max((palm_width(p) for p in decompose(t)), default=0)


def _compact(t: Tree, sub: Coloring, vmap: dict[int, int], m: int) -> Coloring:
    n = sub.k
    table = PairTable(n, m)

    def rule(palm, j, d, cb):
        if j <= m:
            return n + j if d % 2 else cb
        a, b = table[j - m]
        return a if d % 2 else b

    return _paint(t, sub, vmap, rule)


@dataclass(frozen=True)
class StageResult:
    coloring: Coloring
    width: int
    escalations: int
    fell_back: bool


def compact_stage(t: Tree, sub: Coloring, vmap: dict[int, int]) -> StageResult:
    """Palm-compact extension with verification and escalation."""
    reduced = _check_sub(t, sub, vmap)
    if reduced == t:
        return StageResult(sub, 0, 0, False)
    palms = decompose(t)
    m = max(palm_width(p) for p in palms)
    l_max = max(p.l for p in palms)
    col = _compact(t, sub, vmap, m)
    verdict = verify_locating(t, col)
    escalations = 0
    while not verdict.ok and escalations < t.max_degree and m < l_max:
        m += 1
        escalations += 1
        log.warning("compact extension failed (%s); escalating width to %d", verdict, m)
        col = _compact(t, sub, vmap, m)
        verdict = verify_locating(t, col)
    if verdict.ok:
        return StageResult(col, m, escalations, False)
    log.warning("compact extension failed after %d escalations; using simple extension", escalations)
    col = extend_simple(t, sub, vmap)
    verdict = verify_locating(t, col)
    if not verdict.ok:
        raise RuntimeError(f"no extension rule produced a locating coloring: {verdict}")
    return StageResult(col, m, escalations, True)


def extend_compact(t: Tree, sub: Coloring, vmap: dict[int, int]) -> Coloring:
    """Lift a locating coloring of reduce(t) using ``max(p_i, ceil(sqrt(l_i)))`` new colors.

    End-paths of each palm are taken in ascending length.  The j-th of the
    first ``m`` alternates ``n + j`` with the branch color; later ones alternate
    an ordered pair of new colors.
    """
    return compact_stage(t, sub, vmap).coloring


# -- pipeline ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    lower: int
    per_stage: tuple[int, ...]
    base_path_cost: int
    upper: int
    used: int
    escalations: int = 0
    fallbacks: int = 0
    strategy: str = "compact"

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "per_stage": list(self.per_stage),
            "base_path_cost": self.base_path_cost,
            "upper": self.upper,
            "used": self.used,
            "escalations": self.escalations,
            "fallbacks": self.fallbacks,
            "strategy": self.strategy,
        }


def color_tree(t: Tree, strategy: str = "compact", max_iter: int | None = None):
    """Color ``t`` by reducing to a path and extending back stage by stage.

    Returns ``(coloring, BoundReport, ReductionTrace)``.  With the compact
    strategy the per-stage cost is ``max(p_max, ceil(sqrt(l_max)))``; with the
    simple strategy it is the stage's maximum degree.
    """
    if strategy not in ("compact", "simple"):
        raise ValueError(f"unknown strategy {strategy!r}")
    trace = reduction_sequence(t, max_iter)
    if trace.terminal not in (Terminal.PATH, Terminal.SINGLETON):
        raise PipelineRefused(trace.terminal, trace)
    col = color_path(trace.last)
    base = path_chi(trace.last)
    escalations = fallbacks = 0
    for i in reversed(range(trace.steps)):
        stage, vmap = trace.stages[i], trace.vmaps[i]
        if strategy == "compact":
            res = compact_stage(stage, col, vmap)
            col = res.coloring
            escalations += res.escalations
            fallbacks += res.fell_back
        else:
            col = extend_simple(stage, col, vmap)
    if strategy == "compact":
        per_stage = tuple(max(p, ceil_sqrt(l)) for l, p in trace.per_stage)
    else:
        per_stage = tuple(s.max_degree for s in trace.stages[:-1])
    verdict = verify_locating(t, col)
    if not verdict.ok:
        raise RuntimeError(f"pipeline emitted a non-locating coloring: {verdict}")
    report = BoundReport(
        lower=degree_lower_bound(t),
        per_stage=per_stage,
        base_path_cost=base,
        upper=base + sum(per_stage),
        used=col.k,
        escalations=escalations,
        fallbacks=fallbacks,
        strategy=strategy,
    )
    return col, report, trace


__all__ = [
    "BoundReport", "PairTable", "PipelineRefused", "StageResult", "color_path", "color_tree",
    "compact_stage", "degree_lower_bound", "extend_compact", "extend_simple", "path_chi",
]
