"""Colorings, color codes and the locating-coloring verifier.

Ray vertices are addressed as :class:`RayVertex` ``(base, index, depth)`` with
``depth >= 1``.  A ray carries a 2-periodic pattern ``(odd_color, even_color)``
indexed by depth parity, so every color on a ray recurs within distance 1 of
any ray vertex.  Consequently the code of a ray vertex is exact and affine in
its depth from depth 1 onward::

    own pattern color   -> 0
    other pattern color -> 1
    any other color i   -> depth + code(base)[i]

which lets collisions involving ray vertices be solved as small linear systems
instead of by materializing the rays.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence, Union

from .tree import Tree, diameter, distances_from


class RayVertex(NamedTuple):
    base: int
    index: int
    depth: int


Vertex = Union[int, RayVertex]


def vertex_key(v: Vertex) -> tuple:
    """Total order: explicit vertices by id, then ray vertices by (base, index, depth)."""
    if isinstance(v, RayVertex):
        return (1, v.base, v.index, v.depth)
    return (0, v)


class ColoringFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    k: int
    assignment: tuple[int, ...]
    ray_patterns: Mapping[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(x) for x in self.assignment))
        pats = {(int(v), int(i)): (int(o), int(e)) for (v, i), (o, e) in dict(self.ray_patterns).items()}
        object.__setattr__(self, "ray_patterns", dict(sorted(pats.items())))
        if self.k < 1:
            raise ColoringFormatError("k must be positive")
        for v, col in enumerate(self.assignment):
            if not 1 <= col <= self.k:
                raise ColoringFormatError(f"vertex {v} has color {col} outside 1..{self.k}")
        for key, (o, e) in self.ray_patterns.items():
            if not (1 <= o <= self.k and 1 <= e <= self.k):
                raise ColoringFormatError(f"ray {key} pattern {(o, e)} outside 1..{self.k}")

    def __hash__(self):
        return hash((self.k, self.assignment, tuple(self.ray_patterns.items())))

    @property
    def n(self) -> int:
        return len(self.assignment)

    def color(self, v: Vertex) -> int:
        if isinstance(v, RayVertex):
            odd, even = self.ray_patterns[(v.base, v.index)]
            return odd if v.depth % 2 else even
        return self.assignment[v]

    def used_colors(self) -> set[int]:
        used = set(self.assignment)
        for o, e in self.ray_patterns.values():
            used.update((o, e))
        return used

    def check_matches(self, t: Tree) -> None:
        if self.n != t.n:
            raise ValueError(f"coloring covers {self.n} vertices, tree has {t.n}")
        want = {(v, i) for v, cnt in t.rays.items() for i in range(cnt)}
        if set(self.ray_patterns) != want:
            raise ValueError("ray patterns do not match the tree's rays")


class VerdictKind(enum.Enum):
    OK = "OK"
    IMPROPER = "IMPROPER"
    COLLISION = "COLLISION"
    EMPTY_CLASS = "EMPTY_CLASS"


EXIT_CODES = {
    VerdictKind.OK: 0,
    VerdictKind.IMPROPER: 2,
    VerdictKind.COLLISION: 3,
    VerdictKind.EMPTY_CLASS: 4,
}


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: tuple = ()

    @property
    def ok(self) -> bool:
        return self.kind is VerdictKind.OK

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.kind]

    def __str__(self):
        if self.ok:
            return "OK"
        return f"{self.kind.value}({', '.join(map(str, self.witness))})"


class EmptyColorClass(ValueError):
    def __init__(self, color: int):
        super().__init__(f"color class {color} is empty")
        self.color = color


# -- codes -------------------------------------------------------------------

def empty_classes(c: Coloring) -> list[int]:
    used = c.used_colors()
    return [i for i in range(1, c.k + 1) if i not in used]


def explicit_codes(t: Tree, c: Coloring) -> list[tuple[int, ...]]:
    """Color codes of all explicit vertices, rays included in the distances."""
    c.check_matches(t)
    missing = empty_classes(c)
    if missing:
        raise EmptyColorClass(missing[0])
    adj = t.adj
    cols = []
    for i in range(1, c.k + 1):
        dist = [-1] * t.n
        buckets: dict[int, list[int]] = defaultdict(list)
        for v, col in enumerate(c.assignment):
            if col == i:
                dist[v] = 0
                buckets[0].append(v)
        for (v, _), (o, e) in c.ray_patterns.items():
            off = 1 if o == i else 2 if e == i else None
            if off is not None and (dist[v] < 0 or dist[v] > off):
                dist[v] = off
                buckets[off].append(v)
        d = 0
        while buckets:
            for v in buckets.pop(d, ()):
                if dist[v] != d:
                    continue
                for w in adj[v]:
                    if dist[w] < 0 or dist[w] > d + 1:
                        dist[w] = d + 1
                        buckets[d + 1].append(w)
            d += 1
        cols.append(dist)
    return [tuple(col[v] for col in cols) for v in range(t.n)]


def _ray_affine(c: Coloring, base_code: Sequence[int], ray: tuple[int, int], odd_depth: bool):
    """Per-color (slope, offset) of a ray vertex code at one depth parity."""
    o, e = c.ray_patterns[ray]
    own, other = (o, e) if odd_depth else (e, o)
    out = []
    for i in range(1, c.k + 1):
        if i == own:
            out.append((0, 0))
        elif i == other:
            out.append((0, 1))
        else:
            out.append((1, base_code[i - 1]))
    return out


def color_code(t: Tree, c: Coloring, v: Vertex) -> tuple[int, ...]:
    codes = explicit_codes(t, c)
    if isinstance(v, RayVertex):
        if (v.base, v.index) not in c.ray_patterns or v.depth < 1:
            raise ValueError(f"no such ray vertex {v}")
        aff = _ray_affine(c, codes[v.base], (v.base, v.index), v.depth % 2 == 1)
        return tuple(a * v.depth + b for a, b in aff)
    if not 0 <= v < t.n:
        raise IndexError(f"vertex {v} out of range")
    return codes[v]


# -- collision solving -------------------------------------------------------

def _first_depth(parity_odd: bool, at_least: int = 1) -> int:
    d = max(1, at_least)
    if (d % 2 == 1) != parity_odd:
        d += 1
    return d


def _match_explicit(code, aff, parity_odd):
    """Smallest depth of the given parity whose affine code equals ``code``."""
    d = None
    for (a, b), target in zip(aff, code):
        if a:
            if d is None:
                d = target - b
            elif d != target - b:
                return None
    if d is None:
        d = _first_depth(parity_odd)
    if d < 1 or (d % 2 == 1) != parity_odd:
        return None
    if all(a * d + b == x for (a, b), x in zip(aff, code)):
        return d
    return None


def _match_rays(aff1, aff2, p1, p2, same_ray):
    """Smallest (d1, d2) with equal codes, or None."""
    fix1, fix2, diff = set(), set(), set()
    for (a1, b1), (a2, b2) in zip(aff1, aff2):
        rhs = b2 - b1  # a1*d1 - a2*d2 = rhs
        if a1 and a2:
            diff.add(rhs)
        elif a1:
            fix1.add(rhs)
        elif a2:
            fix2.add(-rhs)
        elif rhs:
            return None
    if len(fix1) > 1 or len(fix2) > 1 or len(diff) > 1:
        return None
    f1 = next(iter(fix1), None)
    f2 = next(iter(fix2), None)
    delta = next(iter(diff), None)
    if f1 is not None and f2 is not None:
        d1, d2 = f1, f2
    elif f1 is not None:
        d1 = f1
        d2 = d1 - delta if delta is not None else _first_depth(p2)
    elif f2 is not None:
        d2 = f2
        d1 = d2 + delta if delta is not None else _first_depth(p1)
    elif delta is not None:
        d1 = _first_depth(p1, 1 + delta)
        d2 = d1 - delta
    else:
        d1, d2 = _first_depth(p1), _first_depth(p2)
    if same_ray and d1 == d2 and delta is None:
        if f2 is None:
            d2 += 2
        elif f1 is None:
            d1 += 2
    if d1 < 1 or d2 < 1 or (d1 % 2 == 1) != p1 or (d2 % 2 == 1) != p2:
        return None
    if same_ray and d1 == d2:
        return None
    if any(a1 * d1 + b1 != a2 * d2 + b2 for (a1, b1), (a2, b2) in zip(aff1, aff2)):
        return None
    return d1, d2


def _improper_edge(t: Tree, c: Coloring):
    for u, v in t.sorted_edges():
        if c.assignment[u] == c.assignment[v]:
            return (u, v)
    for (v, i), (o, e) in c.ray_patterns.items():
        if c.assignment[v] == o:
            return (v, RayVertex(v, i, 1))
        if o == e:
            return (RayVertex(v, i, 1), RayVertex(v, i, 2))
    return None


def find_collision(t: Tree, c: Coloring, codes: list[tuple[int, ...]] | None = None):
    """Lexicographically smallest pair of vertices sharing a color code."""
    if codes is None:
        codes = explicit_codes(t, c)
    best = None

    def offer(a, b):
        nonlocal best
        pair = tuple(sorted((a, b), key=vertex_key))
        key = (vertex_key(pair[0]), vertex_key(pair[1]))
        if best is None or key < best[0]:
            best = (key, pair)

    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for v, code in enumerate(codes):
        groups[code].append(v)
    for members in groups.values():
        if len(members) > 1:
            offer(members[0], members[1])

    rays = list(c.ray_patterns)
    if rays:
        affs = {
            (r, p): _ray_affine(c, codes[r[0]], r, p) for r in rays for p in (True, False)
        }
        for u in range(t.n):
            for r in rays:
                for p in (True, False):
                    d = _match_explicit(codes[u], affs[(r, p)], p)
                    if d is not None:
                        offer(u, RayVertex(r[0], r[1], d))
        for x, r1 in enumerate(rays):
            for r2 in rays[x:]:
                for p1 in (True, False):
                    for p2 in (True, False):
                        sol = _match_rays(affs[(r1, p1)], affs[(r2, p2)], p1, p2, r1 == r2)
                        if sol is not None:
                            offer(RayVertex(r1[0], r1[1], sol[0]), RayVertex(r2[0], r2[1], sol[1]))
    return None if best is None else best[1]


def verify_locating(t: Tree, c: Coloring) -> Verdict:
    """Decide whether ``c`` is a locating coloring of ``t`` (rays included, exactly)."""
    c.check_matches(t)
    missing = empty_classes(c)
    if missing:
        return Verdict(VerdictKind.EMPTY_CLASS, (missing[0],))
    bad = _improper_edge(t, c)
    if bad is not None:
        return Verdict(VerdictKind.IMPROPER, bad)
    pair = find_collision(t, c)
    if pair is not None:
        return Verdict(VerdictKind.COLLISION, pair)
    return Verdict(VerdictKind.OK)


def relabel(c: Coloring, perm: Mapping[int, int] | Sequence[int]) -> Coloring:
    """Permute colors; ``perm`` maps old color to new, or lists new colors for 1..k."""
    if isinstance(perm, Mapping):
        mapping = dict(perm)
    else:
        mapping = {i + 1: x for i, x in enumerate(perm)}
    if sorted(mapping) != list(range(1, c.k + 1)) or sorted(mapping.values()) != list(range(1, c.k + 1)):
        raise ValueError("perm is not a bijection on 1..k")
    return Coloring(
        c.k,
        tuple(mapping[x] for x in c.assignment),
        {r: (mapping[o], mapping[e]) for r, (o, e) in c.ray_patterns.items()},
    )


# -- materialization (used to cross-check the analytic ray handling) ---------

def saturation_depth(t: Tree, k: int) -> int:
    return diameter(t) + 2 * k + 2


def materialize(t: Tree, c: Coloring, depth: int) -> tuple[Tree, Coloring, list[Vertex]]:
    """Unroll every ray to ``depth`` explicit vertices.

    Returns the finite tree, its coloring, and a label per new vertex id.  Codes
    of the unrolled vertices equal the infinite-tree codes because each ray
    pattern color already occurs at depth 1 or 2.
    """
    if depth < 2 and t.rays:
        raise ValueError("need depth >= 2 to keep both pattern colors")
    labels: list[Vertex] = list(range(t.n))
    colors = list(c.assignment)
    edges = set(t.edges)
    for (v, i), (o, e) in c.ray_patterns.items():
        prev = v
        for d in range(1, depth + 1):
            nid = len(labels)
            labels.append(RayVertex(v, i, d))
            colors.append(o if d % 2 else e)
            edges.add((prev, nid))
            prev = nid
    return Tree(len(labels), frozenset(edges)), Coloring(c.k, tuple(colors)), labels


def eccentricity(t: Tree, v: int) -> int:
    return max(distances_from(t, v))


# -- file format -------------------------------------------------------------

def parse_coloring(text: str) -> Coloring:
    k = None
    assign: dict[int, int] = {}
    pats: dict[tuple[int, int], tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise ColoringFormatError(f"line {lineno}: non-integer field") from None
        tag = parts[0]
        if k is None:
            if tag != "k" or len(nums) != 1:
                raise ColoringFormatError(f"line {lineno}: expected 'k <count>' first")
            k = nums[0]
        elif tag == "c" and len(nums) == 2:
            if nums[0] in assign:
                raise ColoringFormatError(f"line {lineno}: vertex {nums[0]} colored twice")
            assign[nums[0]] = nums[1]
        elif tag == "p" and len(nums) == 4:
            pats[(nums[0], nums[1])] = (nums[2], nums[3])
        else:
            raise ColoringFormatError(f"line {lineno}: malformed line {raw!r}")
    if k is None:
        raise ColoringFormatError("missing 'k <count>' line")
    if sorted(assign) != list(range(len(assign))):
        raise ColoringFormatError("vertex ids must be exactly 0..n-1")
    return Coloring(k, tuple(assign[v] for v in range(len(assign))), pats)


def serialize_coloring(c: Coloring) -> str:
    lines = [f"k {c.k}"]
    lines += [f"c {v} {col}" for v, col in enumerate(c.assignment)]
    lines += [f"p {v} {i} {o} {e}" for (v, i), (o, e) in sorted(c.ray_patterns.items())]
    return "\n".join(lines) + "\n"


__all__ = [
    "Coloring", "ColoringFormatError", "EmptyColorClass", "RayVertex", "Verdict", "VerdictKind",
    "color_code", "explicit_codes", "find_collision", "materialize", "parse_coloring", "relabel",
    "saturation_depth", "serialize_coloring", "verify_locating",
]
