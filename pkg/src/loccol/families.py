"""Tree families, their closed-form locating-number columns, and pigeonhole certificates.

Parameter conventions (all generators number vertices breadth-first from the
first listed vertex):

==================  ===========================================================
star(n)             n vertices: a center and n-1 leaves
double_star(a,b)    two adjacent centers carrying a and b leaves, 1 <= a <= b
caterpillar(m,n)    spine of m vertices, n leaves on every spine vertex
lobster(m,n)        spine of m vertices, n legs of length 2 on every spine vertex
banana(n,k)         n copies of a k-vertex star, one leaf of each joined to a new root
firecracker(n,k)    path of n vertices, each one a leaf of its own k-vertex star
amalgamation_star   k copies of K_{1,m} with one leaf of each identified at a
  (k,m)             common vertex
complete_nary(n,k)  root with n children, every internal vertex n children, depth k
olive(k)            legs of lengths 1..k at one center
comb(N,rays)        spine of 2N+1 vertices, one tooth per spine vertex; rays=1
                    adds a ray at each spine end
regular_tree(k,r)   ball of radius r in the infinite k-regular tree
g_tree(n,i,tail,    spine v_0..v_{i+tail}; v_j is the root of a copy of
  ray)              complete_nary(n, j) for 1 <= j <= i; ray=1 adds a ray at the
                    spine's far end
==================  ===========================================================
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .paint import ceil_sqrt, color_tree
from .tree import Tree


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.rays: dict[int, int] = {}

    def add(self, parent: int | None = None) -> int:
        v = self.n
        self.n += 1
        if parent is not None:
            self.edges.append((parent, v))
        return v

    def path(self, start: int, length: int) -> list[int]:
        out, cur = [], start
        for _ in range(length):
            cur = self.add(cur)
            out.append(cur)
        return out

    def tree(self) -> Tree:
        return Tree.from_edges(self.n, self.edges, self.rays)


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def star(n: int) -> Tree:
    _need(n >= 1, "star needs n >= 1")
    b = _Builder()
    c = b.add()
    for _ in range(n - 1):
        b.add(c)
    return b.tree()


def double_star(a: int, b: int) -> Tree:
    _need(1 <= a <= b, "double_star needs 1 <= a <= b")
    bl = _Builder()
    x = bl.add()
    y = bl.add(x)
    for _ in range(a):
        bl.add(x)
    for _ in range(b):
        bl.add(y)
    return bl.tree()


def caterpillar(m: int, n: int) -> Tree:
    _need(m >= 1 and n >= 0, "caterpillar needs m >= 1, n >= 0")
    b = _Builder()
    spine = [b.add()]
    spine += b.path(spine[0], m - 1)
    for s in spine:
        for _ in range(n):
            b.add(s)
    return b.tree()


def lobster(m: int, n: int) -> Tree:
    _need(m >= 1 and n >= 0, "lobster needs m >= 1, n >= 0")
    b = _Builder()
    spine = [b.add()]
    spine += b.path(spine[0], m - 1)
    for s in spine:
        for _ in range(n):
            b.path(s, 2)
    return b.tree()


def banana(n: int, k: int) -> Tree:
    _need(n >= 1 and k >= 2, "banana needs n >= 1, k >= 2")
    b = _Builder()
    root = b.add()
    for _ in range(n):
        joint = b.add(root)
        center = b.add(joint)
        for _ in range(k - 2):
            b.add(center)
    return b.tree()


def firecracker(n: int, k: int) -> Tree:
    _need(n >= 1 and k >= 2, "firecracker needs n >= 1, k >= 2")
    b = _Builder()
    spine = [b.add()]
    spine += b.path(spine[0], n - 1)
    for s in spine:
        center = b.add(s)
        for _ in range(k - 2):
            b.add(center)
    return b.tree()


def amalgamation_star(k: int, m: int) -> Tree:
    _need(k >= 1 and m >= 1, "amalgamation_star needs k, m >= 1")
    b = _Builder()
    hub = b.add()
    for _ in range(k):
        center = b.add(hub)
        for _ in range(m - 1):
            b.add(center)
    return b.tree()


def complete_nary(n: int, k: int) -> Tree:
    _need(n >= 1 and k >= 0, "complete_nary needs n >= 1, k >= 0")
    b = _Builder()
    level = [b.add()]
    for _ in range(k):
        level = [b.add(p) for p in level for _ in range(n)]
    return b.tree()


def olive(k: int) -> Tree:
    _need(k >= 1, "olive needs k >= 1")
    b = _Builder()
    c = b.add()
    for length in range(1, k + 1):
        b.path(c, length)
    return b.tree()


def comb(N: int, rays: int = 0) -> Tree:
    _need(N >= 0 and rays in (0, 1), "comb needs N >= 0, rays in {0, 1}")
    b = _Builder()
    spine = [b.add()]
    spine += b.path(spine[0], 2 * N)
    for s in spine:
        b.add(s)
    if rays:
        b.rays[spine[0]] = b.rays.get(spine[0], 0) + 1
        b.rays[spine[-1]] = b.rays.get(spine[-1], 0) + 1
    return b.tree()


def regular_tree(k: int, r: int) -> Tree:
    _need(k >= 2 and r >= 0, "regular_tree needs k >= 2, r >= 0")
    b = _Builder()
    root = b.add()
    level = [b.add(root) for _ in range(k)] if r >= 1 else []
    for _ in range(r - 1):
        level = [b.add(p) for p in level for _ in range(k - 1)]
    return b.tree()


def g_tree(n: int, i: int, tail: int = 0, ray: int = 0) -> Tree:
    _need(n >= 1 and i >= 0 and tail >= 0 and ray in (0, 1), "g_tree needs n >= 1, i >= 0, tail >= 0, ray in {0, 1}")
    b = _Builder()
    spine = [b.add()]
    spine += b.path(spine[0], i + tail)
    for j in range(1, i + 1):
        level = [spine[j]]
        for _ in range(j):
            level = [b.add(p) for p in level for _ in range(n)]
    if ray:
        b.rays[spine[-1]] = 1
    return b.tree()


def random_tree(n: int, max_degree: int, rng: random.Random) -> Tree:
    """Uniform-attachment random tree with every degree at most ``max_degree``."""
    _need(n >= 1 and max_degree >= 2, "random_tree needs n >= 1, max_degree >= 2")
    deg = [0] * n
    edges = []
    for v in range(1, n):
        u = rng.choice([u for u in range(v) if deg[u] < max_degree])
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return Tree.from_edges(n, edges)


GENERATORS: dict[str, Callable[..., Tree]] = {
    "star": star,
    "double_star": double_star,
    "caterpillar": caterpillar,
    "lobster": lobster,
    "banana": banana,
    "firecracker": firecracker,
    "amalgamation_star": amalgamation_star,
    "complete_nary": complete_nary,
    "olive": olive,
    "comb": comb,
    "regular_tree": regular_tree,
    "g_tree": g_tree,
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown family {self.name!r}")

    def label(self) -> str:
        return f"{self.name}(" + ",".join(f"{k}={v}" for k, v in self.params.items()) + ")"


def generate(spec: FamilySpec) -> Tree:
    try:
        return GENERATORS[spec.name](**spec.params)
    except TypeError as e:
        raise ValueError(f"bad parameters for {spec.name}: {e}") from None


def parse_params(text: str) -> dict[str, int]:
    """``"a=2,b=3"`` -> ``{"a": 2, "b": 3}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected name=value, got {item!r}")
        out[key.strip()] = int(val)
    return out


# -- closed forms ------------------------------------------------------------

def ceil_log3(x: Fraction) -> int:
    """Smallest integer e with 3**e >= x, for x > 0."""
    if x <= 0:
        raise ValueError("log of a non-positive number")
    e = 0
    if Fraction(3) ** e >= x:
        while Fraction(3) ** (e - 1) >= x:
            e -= 1
    else:
        while Fraction(3) ** e < x:
            e += 1
    return e


@dataclass(frozen=True)
class Formulas:
    row: str
    exact: int | None
    fm: int
    bp: int
    thm: int


def closed_forms(spec: FamilySpec) -> Formulas:
    """Table columns (exact, FM, BP, iterated bound) evaluated at the spec's parameters.

    ``exact`` is None where the row's formula is conditional or uses an
    undefined function.
    """
    p = dict(spec.params)
    name = spec.name
    if name == "amalgamation_star":
        k, m = p["k"], p["m"]
        return Formulas("Amalgamation of star", None, k * m - 2 * k + 2, k + m - 1, k + m)
    if name == "banana":
        n, k = p["n"], p["k"]
        return Formulas("Banana tree", k - 1, n * (k - 3) + 2, n + k - 1, ceil_sqrt(n) + k)
    if name == "caterpillar":
        m, n = p["m"], p["n"]
        return Formulas("Caterpillar", n + 2, n * m - m + 2, n + m, n + 3)
    if name == "complete_nary":
        n, k = p["n"], p["k"]
        exact = n + k - 1 if k in (2, 3) else None
        return Formulas("Complete n-ary tree", exact, n**k - n ** (k - 1) + 2, n ** (k - 1) + n, n * k + 1)
    if name == "double_star":
        a, b = p["a"], p["b"]
        return Formulas("Double star", b + 1, b + a, b + 2, b + 2)
    if name == "lobster":
        m, n = p["m"], p["n"]
        return Formulas("Lobster", n + 2, m * n * n - m * n + 2, n * (m + 1), 2 * n + 3)
    if name == "firecracker":
        n, k = p["n"], p["k"]
        if n <= k - 1:
            return Formulas("Firecracker-1", k, n * (k - 3) + 2, n + k - 2, k + 3)
        return Formulas("Firecracker-2", k - 1, n * (k - 3) + 2, n + k - 2, k + 3)
    if name == "olive":
        k = p["k"]
        exact = ceil_log3(Fraction(k, 4)) + 3
        return Formulas("Olive tree", exact, k + 1, ceil_sqrt(k) + 1, ceil_sqrt(k) + 1)
    if name == "star":
        n = p["n"]
        return Formulas("Star", n, n, n, n)
    raise ValueError(f"family {name!r} has no table row")


TABLE1_DEFAULTS: tuple[FamilySpec, ...] = (
    FamilySpec("amalgamation_star", {"k": 3, "m": 3}),
    FamilySpec("banana", {"n": 2, "k": 4}),
    FamilySpec("caterpillar", {"m": 3, "n": 3}),
    FamilySpec("complete_nary", {"n": 2, "k": 2}),
    FamilySpec("double_star", {"a": 2, "b": 3}),
    FamilySpec("lobster", {"m": 2, "n": 2}),
    FamilySpec("firecracker", {"n": 2, "k": 5}),
    FamilySpec("firecracker", {"n": 5, "k": 5}),
    FamilySpec("olive", {"k": 3}),
    FamilySpec("star", {"n": 6}),
)


@dataclass(frozen=True)
class TableRow:
    family: str
    row: str
    params: Mapping[str, int]
    vertices: int
    exact_formula: int | None
    fm_formula: int
    bp_formula: int
    thm_formula: int
    computed_used: int
    computed_upper: int
    computed_exact: int | None

    def as_dict(self) -> dict:
        return {
            "row": self.row,
            "family": self.family,
            "params": dict(self.params),
            "vertices": self.vertices,
            "exact_formula": self.exact_formula,
            "fm": self.fm_formula,
            "bp": self.bp_formula,
            "thm": self.thm_formula,
            "pipeline_used": self.computed_used,
            "pipeline_upper": self.computed_upper,
            "exact_search": self.computed_exact,
        }


def table_row(spec: FamilySpec, budget: int | None = None) -> TableRow:
    from .exact import SearchConfig, exact_chi_L

    t = generate(spec)
    f = closed_forms(spec)
    _, report, _ = color_tree(t)
    res = exact_chi_L(t, SearchConfig(node_budget=budget))
    return TableRow(
        spec.name, f.row, dict(spec.params), t.n, f.exact, f.fm, f.bp, f.thm,
        report.used, report.upper, res.chi_L if res.known else None,
    )


def table1(specs=TABLE1_DEFAULTS, budget: int | None = None) -> list[TableRow]:
    return [table_row(s, budget) for s in specs]


def _cell(x) -> str:
    return "N/A" if x is None else str(x)


def render_table(rows: list[TableRow], fmt: str = "text") -> str:
    if fmt == "json-lines":
        return "".join(json.dumps(r.as_dict(), sort_keys=True) + "\n" for r in rows)
    header = ["graph", "params", "|V|", "exact-formula", "FM", "BP", "Thm", "pipeline-used", "exact-search"]
    body = []
    for r in rows:
        params = ",".join(f"{k}={v}" for k, v in r.params.items())
        body.append([
            r.row, params, str(r.vertices), _cell(r.exact_formula), str(r.fm_formula),
            str(r.bp_formula), str(r.thm_formula), str(r.computed_used),
            "UNKNOWN" if r.computed_exact is None else str(r.computed_exact),
        ])
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [header, *body]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# -- pigeonhole certificates ---------------------------------------------------

def regular_sides(k: int, t: int, n: int) -> tuple[int, int]:
    """(codes available, vertices at distance n) for the k-regular tree."""
    return (2 * n) ** t, k * (k - 1) ** (n - 1)


def gtree_sides(n: int, t: int, i: int) -> tuple[int, int]:
    """(codes available, leaves) for the depth-i complete n-ary tree."""
    return (2 * i) ** t, n**i


def _threshold(holds, grows_fast) -> int:
    """Smallest N with holds(m) for every m >= N.

    ``grows_fast(m)`` must certify that holds(m) implies holds(m + 1) for all
    later m as well (it is monotone in m).
    """
    n0 = 1
    while not grows_fast(n0):
        n0 += 1
    last_fail = 0
    for m in range(1, n0 + 1):
        if not holds(m):
            last_fail = m
    n = last_fail + 1
    while not holds(n):
        n += 1
    return n


def pigeonhole_regular(k: int, t: int) -> int:
    """Radius past which the k-regular tree's sphere outnumbers all t-color codes.

    Smallest n such that ``(2n)**t < k*(k-1)**(n-1)`` holds for n and every
    larger radius; exact integer arithmetic throughout.
    """
    if k < 3 or t < 1:
        raise ValueError("need k >= 3 and t >= 1")

    def holds(m):
        lhs, rhs = regular_sides(k, t, m)
        return lhs < rhs

    return _threshold(holds, lambda m: (k - 1) * m**t >= (m + 1) ** t)


def pigeonhole_gtree(n: int, t: int) -> int:
    """Depth past which a complete n-ary tree has more leaves than t-color codes."""
    if n < 2 or t < 1:
        raise ValueError("need n >= 2 and t >= 1")

    def holds(i):
        lhs, rhs = gtree_sides(n, t, i)
        return lhs < rhs

    return _threshold(holds, lambda i: n * i**t >= (i + 1) ** t)


@dataclass(frozen=True)
class CollisionEvidence:
    k: int
    t: int
    radius: int
    vertices: int
    boundary: int
    code_bound: int
    search: str  # "none", "found", "unknown" or "skipped"

    @property
    def arithmetic(self) -> bool:
        return self.code_bound < self.boundary


def collision_demo(k: int, t: int, budget: int | None = None, max_search_vertices: int = 200):
    """Truncate the k-regular tree at the certificate radius and try a t-coloring."""
    from .exact import UNKNOWN, SearchConfig, is_locating_k_colorable

    r = pigeonhole_regular(k, t)
    tree = regular_tree(k, r)
    code_bound, boundary = regular_sides(k, t, r)
    if tree.n > max_search_vertices:
        outcome = "skipped"
    else:
        w = is_locating_k_colorable(tree, t, SearchConfig(node_budget=budget))
        outcome = "unknown" if w is UNKNOWN else "none" if w is None else "found"
    return tree, CollisionEvidence(k, t, r, tree.n, boundary, code_bound, outcome)
