"""Exact locating-chromatic number of finite trees by pruned depth-first search.

Vertices are visited in BFS order from a maximum-degree vertex.  Pruning:

* properness against the BFS parent (the only earlier neighbour),
* pair triggers: once every still-uncolored vertex is equidistant from two
  colored vertices ``x`` and ``y``, equal partial codes force equal final codes,
  so the branch is cut (unequal partial codes prove nothing; complete
  colorings get a full distinctness check),
* canonical first use of colors when symmetry breaking is on,
* enough uncolored vertices must remain to open every unused color.

The hot loop lives in :mod:`loccol.kernels`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels
from .coloring import Coloring, verify_locating
from .paint import degree_lower_bound
from .tree import Tree, bfs_order, distance_matrix

DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    env = os.environ.get("LOCCOL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNKNOWN"

    __str__ = __repr__


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class SearchConfig:
    k_min: int | None = None
    k_max: int | None = None
    node_budget: int | None = None
    symmetry_breaking: bool = True

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.k_min is not None and self.k_max is not None and self.k_min > self.k_max:
            raise ValueError("k_min exceeds k_max")

    @property
    def budget(self) -> int:
        return self.node_budget if self.node_budget is not None else default_budget()


@dataclass(frozen=True)
class ExactResult:
    chi_L: Union[int, _Unknown]
    witness: Coloring | None
    nodes_explored: int

    @property
    def known(self) -> bool:
        return self.chi_L is not UNKNOWN


@dataclass(frozen=True)
class _Prepared:
    order: list[int]
    dist: np.ndarray
    parent: np.ndarray
    trig_start: np.ndarray
    trig_x: np.ndarray
    trig_y: np.ndarray


def search_root(t: Tree) -> int:
    return max(range(t.n), key=lambda v: (t.degree(v), -v))


def pair_triggers(dist: np.ndarray):
    """CSR table of vertex pairs keyed by the last vertex that separates them."""
    n = dist.shape[0]
    xs, ys, qs = [], [], []
    for x in range(n - 1):
        rows = dist[x + 1:] != dist[x]
        last = n - 1 - np.argmax(rows[:, ::-1], axis=1)
        xs.append(np.full(n - 1 - x, x, dtype=np.int32))
        ys.append(np.arange(x + 1, n, dtype=np.int32))
        qs.append(last)
    if not xs:
        return np.zeros(n + 1, dtype=np.int64), np.zeros(0, np.int32), np.zeros(0, np.int32)
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    q = np.concatenate(qs)
    idx = np.argsort(q, kind="stable")
    start = np.zeros(n + 1, dtype=np.int64)
    np.add.at(start, q + 1, 1)
    return np.cumsum(start), x[idx], y[idx]


def _prepare(t: Tree) -> _Prepared:
    if t.rays:
        raise ValueError("exact search is defined for finite trees only")
    order = bfs_order(t, search_root(t))
    pos = {v: i for i, v in enumerate(order)}
    full = np.array(distance_matrix(t), dtype=np.int32)
    dist = np.ascontiguousarray(full[np.ix_(order, order)])
    parent = np.full(t.n, -1, dtype=np.int32)
    for i, v in enumerate(order):
        for w in t.adj[v]:
            if pos[w] < i:
                parent[i] = pos[w]
    ts, tx, ty = pair_triggers(dist)
    return _Prepared(order, dist, parent, ts, tx, ty)


def _to_coloring(t: Tree, order: list[int], colors: list[int], k: int) -> Coloring:
    assign = [0] * t.n
    for i, v in enumerate(order):
        assign[v] = colors[i]
    return Coloring(k, tuple(assign))


def _decide(t: Tree, prep: _Prepared, k: int, symmetry: bool, budget: int):
    status, colors, nodes = kernels.search(
        prep.dist, prep.parent, prep.trig_start, prep.trig_x, prep.trig_y, k, symmetry, budget
    )
    if status == kernels.FOUND:
        witness = _to_coloring(t, prep.order, colors, k)
        verdict = verify_locating(t, witness)
        if not verdict.ok:
            raise AssertionError(f"search produced a non-locating coloring: {verdict}")
        return witness, nodes
    if status == kernels.BUDGET:
        return UNKNOWN, nodes
    return None, nodes


def is_locating_k_colorable(t: Tree, k: int, cfg: SearchConfig | None = None):
    """Witness coloring, ``None`` when none exists, or ``UNKNOWN`` on budget exhaustion."""
    cfg = cfg or SearchConfig()
    witness, _ = _decide(t, _prepare(t), k, cfg.symmetry_breaking, cfg.budget)
    return witness


def exact_chi_L(t: Tree, cfg: SearchConfig | None = None) -> ExactResult:
    cfg = cfg or SearchConfig()
    prep = _prepare(t)
    k_min = cfg.k_min if cfg.k_min is not None else degree_lower_bound(t)
    k_max = cfg.k_max if cfg.k_max is not None else t.n
    budget = cfg.budget
    spent = 0
    for k in range(max(1, k_min), k_max + 1):
        witness, nodes = _decide(t, prep, k, cfg.symmetry_breaking, budget - spent)
        spent += nodes
        if witness is UNKNOWN:
            return ExactResult(UNKNOWN, None, spent)
        if witness is not None:
            return ExactResult(k, witness, spent)
    return ExactResult(UNKNOWN, None, spent)


def brute_force_chi_L(t: Tree, k_max: int | None = None) -> tuple[int, Coloring]:
    """Reference answer by scanning every assignment for k = 1, 2, ...

    Exponential; intended for trees with at most 9 vertices.
    """
    if t.rays:
        raise ValueError("brute force needs a finite tree")
    dist = np.array(distance_matrix(t), dtype=np.int32)
    edges = t.sorted_edges()
    eu = np.array([u for u, _ in edges], dtype=np.int32)
    ev = np.array([v for _, v in edges], dtype=np.int32)
    for k in range(1, (k_max or t.n) + 1):
        found, colors, _ = kernels.brute_force(dist, eu, ev, k)
        if found:
            return k, Coloring(k, tuple(colors))
    raise AssertionError("every finite tree has a locating n-coloring")
