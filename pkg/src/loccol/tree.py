"""Finitely described trees, their end-path structure, and the pruning operator.

A :class:`Tree` is a finite tree on vertices ``0..n-1`` in which any vertex may
carry pendant infinite rays.  Rays are the only infinite feature; a tree with at
least one ray stands for an infinite tree of bounded degree.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

INFINITE = math.inf


class TreeFormatError(ValueError):
    """Raised for malformed tree files or invalid tree structure."""


@dataclass(frozen=True)
class Tree:
    n: int
    edges: frozenset[tuple[int, int]]
    rays: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise TreeFormatError("a tree needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise TreeFormatError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise TreeFormatError(f"self-loop at {u}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise TreeFormatError(f"duplicate edge {e}")
            norm.add(e)
        rays = {}
        for v, cnt in dict(self.rays).items():
            if not 0 <= v < self.n:
                raise TreeFormatError(f"ray mark on unknown vertex {v}")
            if cnt < 0:
                raise TreeFormatError(f"negative ray count at {v}")
            if cnt:
                rays[v] = rays.get(v, 0) + cnt
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "rays", dict(sorted(rays.items())))
        if len(norm) != self.n - 1:
            if len(norm) > self.n - 1:
                raise TreeFormatError("cycle detected")
            raise TreeFormatError("tree is disconnected")
        seen = _bfs_order(self.adj, 0)
        if len(seen) != self.n:
            # n-1 edges without connectivity forces a cycle
            raise TreeFormatError("cycle detected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], rays: Mapping[int, int] | None = None) -> "Tree":
        edges = list(edges)
        norm = {(min(u, v), max(u, v)) for u, v in edges}
        if len(norm) != len(edges):
            raise TreeFormatError("duplicate edge")
        return cls(n, frozenset(norm), dict(rays or {}))

    def __hash__(self):
        return hash((self.n, self.edges, tuple(self.rays.items())))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def ray_count(self, v: int) -> int:
        return self.rays.get(v, 0)

    def degree(self, v: int) -> int:
        """Effective degree: explicit neighbours plus rays."""
        return len(self.adj[v]) + self.ray_count(v)

    @property
    def max_degree(self) -> int:
        return max(self.degree(v) for v in range(self.n))

    @property
    def is_infinite(self) -> bool:
        return bool(self.rays)

    @property
    def total_rays(self) -> int:
        return sum(self.rays.values())

    def is_path(self) -> bool:
        """True for K_1, finite paths, and one- or two-ended infinite paths."""
        return all(self.degree(v) <= 2 for v in range(self.n))

    def is_branch(self, v: int) -> bool:
        return self.degree(v) >= 3

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):
        r = f", rays={self.rays}" if self.rays else ""
        return f"Tree(n={self.n}, edges={self.sorted_edges()}{r})"


def _bfs_order(adj, root):
    seen = {root}
    order = [root]
    q = deque([root])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                q.append(w)
    return order


# -- file format -------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse the line-oriented tree format (``n``, ``e u v``, ``r v [mult]``)."""
    n = None
    edges: list[tuple[int, int]] = []
    rays: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise TreeFormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        tag = parts[0]
        if n is None:
            if tag != "n" or len(nums) != 1:
                raise TreeFormatError(f"line {lineno}: expected 'n <count>' first")
            n = nums[0]
            if n < 1:
                raise TreeFormatError(f"line {lineno}: vertex count must be positive")
            continue
        if tag == "n":
            raise TreeFormatError(f"line {lineno}: repeated 'n' line")
        elif tag == "e" and len(nums) == 2:
            u, v = nums
            if not (0 <= u < n and 0 <= v < n):
                raise TreeFormatError(f"line {lineno}: edge on unknown vertex")
            e = (min(u, v), max(u, v))
            if e in edges:
                raise TreeFormatError(f"line {lineno}: duplicate edge {u} {v}")
            edges.append(e)
        elif tag == "r" and len(nums) in (1, 2):
            v = nums[0]
            mult = nums[1] if len(nums) == 2 else 1
            if not 0 <= v < n:
                raise TreeFormatError(f"line {lineno}: ray mark on unknown vertex {v}")
            if mult < 1:
                raise TreeFormatError(f"line {lineno}: ray multiplicity must be positive")
            rays[v] = rays.get(v, 0) + mult
        else:
            raise TreeFormatError(f"line {lineno}: malformed line {raw!r}")
    if n is None:
        raise TreeFormatError("missing 'n <count>' line")
    return Tree(n, frozenset(edges), rays)


def serialize_tree(t: Tree) -> str:
    lines = [f"n {t.n}"]
    lines += [f"e {u} {v}" for u, v in t.sorted_edges()]
    for v, cnt in sorted(t.rays.items()):
        lines.append(f"r {v}" if cnt == 1 else f"r {v} {cnt}")
    return "\n".join(lines) + "\n"


# -- metric ------------------------------------------------------------------

def distances_from(t: Tree, v: int) -> list[int]:
    """Hop distances from ``v`` to every explicit vertex."""
    if not 0 <= v < t.n:
        raise IndexError(f"vertex {v} out of range for tree on {t.n} vertices")
    dist = [-1] * t.n
    dist[v] = 0
    q = deque([v])
    adj = t.adj
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                q.append(w)
    return dist


def distance_matrix(t: Tree) -> list[list[int]]:
    return [distances_from(t, v) for v in range(t.n)]


def diameter(t: Tree) -> int:
    """Diameter of the explicit part (double sweep)."""
    d0 = distances_from(t, 0)
    far = max(range(t.n), key=d0.__getitem__)
    return max(distances_from(t, far))


def bfs_order(t: Tree, root: int) -> list[int]:
    return _bfs_order(t.adj, root)


# -- decomposition -----------------------------------------------------------

@dataclass(frozen=True)
class EndPath:
    """Path from an end-branch out to a leaf, or out to a ray.

    ``vertices`` runs from the branch-adjacent vertex outward.  For an infinite
    end-path, ``ray`` names the ray ``(base, index)`` that continues it; the
    base is the last listed vertex, or the branch itself when nothing is listed.
    """

    branch: int
    vertices: tuple[int, ...]
    length: float
    ray: tuple[int, int] | None = None

    @property
    def is_ray(self) -> bool:
        return self.ray is not None

    @property
    def leaf(self) -> int | None:
        return None if self.is_ray else self.vertices[-1]

    def sort_key(self):
        if self.is_ray:
            return (1, 0, self.ray)
        return (0, self.length, self.leaf)


@dataclass(frozen=True)
class Palm:
    branch: int
    end_paths: tuple[EndPath, ...]

    @property
    def l(self) -> int:
        return len(self.end_paths)

    @property
    def p(self) -> int:
        return sum(1 for q in self.end_paths if q.length == 1)


def _end_path_from_leaf(t: Tree, leaf: int) -> EndPath | None:
    chain = [leaf]
    prev, cur = None, leaf
    while True:
        nxt = [w for w in t.adj[cur] if w != prev]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
        if t.is_branch(cur):
            chain.reverse()
            return EndPath(cur, tuple(chain), len(chain))
        if t.degree(cur) != 2 or t.ray_count(cur):
            return None
        chain.append(cur)


def _end_path_from_ray(t: Tree, base: int, idx: int) -> EndPath | None:
    if t.is_branch(base):
        return EndPath(base, (), INFINITE, (base, idx))
    # base has effective degree 2: one ray plus one explicit neighbour
    if len(t.adj[base]) != 1:
        return None
    chain = [base]
    prev, cur = base, t.adj[base][0]
    while not t.is_branch(cur):
        nxt = [w for w in t.adj[cur] if w != prev]
        if len(nxt) != 1 or t.ray_count(cur):
            return None
        chain.append(cur)
        prev, cur = cur, nxt[0]
    chain.reverse()
    return EndPath(cur, tuple(chain), INFINITE, (base, idx))


def end_paths(t: Tree) -> list[EndPath]:
    if t.is_path():
        return []
    found = []
    for v in range(t.n):
        if t.degree(v) == 1 and not t.ray_count(v):
            q = _end_path_from_leaf(t, v)
            if q is not None:
                found.append(q)
    for v, cnt in sorted(t.rays.items()):
        for i in range(cnt):
            q = _end_path_from_ray(t, v, i)
            if q is not None:
                found.append(q)
    return found


def decompose(t: Tree) -> list[Palm]:
    """One palm per end-branch, ordered by branch id."""
    by_branch: dict[int, list[EndPath]] = {}
    for q in end_paths(t):
        by_branch.setdefault(q.branch, []).append(q)
    return [Palm(b, tuple(sorted(qs, key=EndPath.sort_key))) for b, qs in sorted(by_branch.items())]


def reduce(t: Tree) -> tuple[Tree, dict[int, int]]:
    """Apply the pruning operator once.

    Returns the pruned tree and the old-to-new vertex map (dense, order
    preserving).  Paths and K_1 are fixed points.
    """
    if t.is_path():
        return t, {v: v for v in range(t.n)}
    palms = decompose(t)
    drop = {v for palm in palms for q in palm.end_paths for v in q.vertices}
    dropped_rays = {q.ray for palm in palms for q in palm.end_paths if q.ray is not None}
    keep = [v for v in range(t.n) if v not in drop]
    vmap = {old: new for new, old in enumerate(keep)}
    edges = frozenset((vmap[u], vmap[v]) for u, v in t.edges if u in vmap and v in vmap)
    rays = {}
    for v, cnt in sorted(t.rays.items()):
        left = sum(1 for i in range(cnt) if (v, i) not in dropped_rays)
        if left and v in vmap:
            rays[vmap[v]] = left
    return Tree(len(keep), edges, rays), vmap


# -- iteration ---------------------------------------------------------------

class Terminal(enum.Enum):
    PATH = "PATH"
    SINGLETON = "SINGLETON"
    FIXED_POINT = "FIXED_POINT"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class ReductionTrace:
    stages: tuple[Tree, ...]
    vmaps: tuple[dict[int, int], ...]
    per_stage: tuple[tuple[int, int], ...]
    terminal: Terminal

    @property
    def steps(self) -> int:
        return len(self.vmaps)

    @property
    def last(self) -> Tree:
        return self.stages[-1]


def palm_stats(palms: list[Palm]) -> tuple[int, int]:
    """(l_max, p_max) over a list of palms."""
    if not palms:
        return (0, 0)
    return max(p.l for p in palms), max(p.p for p in palms)


def reduction_sequence(t: Tree, max_iter: int | None = None) -> ReductionTrace:
    if max_iter is None:
        max_iter = t.n + 1
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    stages, vmaps, stats = [t], [], []
    cur = t
    while True:
        if cur.is_path():
            terminal = Terminal.SINGLETON if cur.n == 1 and not cur.rays else Terminal.PATH
            break
        if len(vmaps) >= max_iter:
            terminal = Terminal.BUDGET_EXHAUSTED
            break
        nxt, vmap = reduce(cur)
        if nxt.n == cur.n and nxt.total_rays == cur.total_rays:
            terminal = Terminal.FIXED_POINT
            break
        stats.append(palm_stats(decompose(cur)))
        stages.append(nxt)
        vmaps.append(vmap)
        cur = nxt
    return ReductionTrace(tuple(stages), tuple(vmaps), tuple(stats), terminal)
