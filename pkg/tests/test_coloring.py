import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loccol.coloring import (
    Coloring,
    ColoringFormatError,
    RayVertex,
    VerdictKind,
    color_code,
    eccentricity,
    explicit_codes,
    materialize,
    parse_coloring,
    relabel,
    saturation_depth,
    serialize_coloring,
    verify_locating,
)
from loccol.families import comb, star
from loccol.tree import Tree, distance_matrix

from .conftest import path


def naive_codes(t, c):
    """Codes straight from the definition on a finite tree."""
    d = distance_matrix(t)
    return [
        tuple(min(d[v][w] for w in range(t.n) if c.assignment[w] == i) for i in range(1, c.k + 1))
        for v in range(t.n)
    ]


def random_proper(t, k, rng, with_rays=True):
    """Random proper coloring of ``t`` (BFS from 0) with random ray patterns."""
    colors = [0] * t.n
    order = [0]
    seen = {0}
    for u in order:
        for w in t.adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    colors[0] = rng.randint(1, k)
    for u in order[1:]:
        parent = next(w for w in t.adj[u] if order.index(w) < order.index(u))
        colors[u] = rng.choice([x for x in range(1, k + 1) if x != colors[parent]])
    pats = {}
    for v, cnt in t.rays.items():
        for i in range(cnt):
            o = rng.choice([x for x in range(1, k + 1) if x != colors[v]])
            e = rng.choice([x for x in range(1, k + 1) if x != o])
            pats[(v, i)] = (o, e)
    return Coloring(k, tuple(colors), pats)


def comb_four_coloring():
    """comb(6) with the published coloring: spine center 3, teeth 4."""
    t = comb(6)
    assign = [0] * t.n
    for i in range(13):
        x = i - 6
        if x == 0:
            assign[i] = 3
        elif x > 0:
            assign[i] = 1 if x % 2 else 2
        else:
            assign[i] = 2 if x % 2 else 1
        assign[13 + i] = 4
    return t, Coloring(4, tuple(assign))


# -- codes ---------------------------------------------------------------------

def test_code_p3_middle():
    c = Coloring(3, (3, 1, 2))
    assert color_code(path(3), c, 1) == (0, 1, 1)


def test_code_star_center():
    c = Coloring(4, (4, 1, 2, 3))
    assert color_code(star(4), c, 0) == (1, 1, 1, 0)


def test_code_ray_vertex_affine():
    # P_{1 inf}: 0 - 1 - ray, colors 3, 1, then 2, 1, 2, ...
    t = Tree.from_edges(2, [(0, 1)], {1: 1})
    c = Coloring(3, (3, 1), {(1, 0): (2, 1)})
    assert color_code(t, c, RayVertex(1, 0, 1)) == (1, 0, 2)
    assert color_code(t, c, RayVertex(1, 0, 4)) == (0, 1, 5)


def test_code_ray_vertex_errors():
    t = Tree.from_edges(2, [(0, 1)], {1: 1})
    c = Coloring(3, (3, 1), {(1, 0): (2, 1)})
    with pytest.raises(ValueError):
        color_code(t, c, RayVertex(1, 0, 0))
    with pytest.raises(IndexError):
        color_code(t, c, 5)


def test_code_uses_ray_colors():
    # the only vertex of color 2 lives on the ray
    t = Tree.from_edges(2, [(0, 1)], {1: 1})
    c = Coloring(3, (3, 1), {(1, 0): (2, 1)})
    assert explicit_codes(t, c) == [(1, 2, 0), (0, 1, 1)]


@settings(max_examples=80)
@given(st.integers(1, 12), st.integers(2, 5), st.integers(0, 10**6))
def test_explicit_codes_match_definition(n, k, seed):
    rng = random.Random(seed)
    t = Tree.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])
    c = Coloring(k, tuple(rng.randint(1, k) for _ in range(n)))
    if len(set(c.assignment)) < k:
        return
    assert explicit_codes(t, c) == naive_codes(t, c)


# -- verifier ------------------------------------------------------------------

def test_verify_p4_ok():
    assert verify_locating(path(4), Coloring(3, (3, 2, 1, 2))).ok


def test_verify_p4_collision():
    v = verify_locating(path(4), Coloring(2, (1, 2, 1, 2)))
    assert v.kind is VerdictKind.COLLISION and v.exit_code == 3


def test_verify_improper_before_collision():
    v = verify_locating(path(3), Coloring(2, (1, 1, 2)))
    assert v.kind is VerdictKind.IMPROPER and v.witness == (0, 1) and v.exit_code == 2


def test_verify_empty_class():
    v = verify_locating(path(3), Coloring(4, (1, 2, 3)))
    assert v.kind is VerdictKind.EMPTY_CLASS and v.witness == (4,) and v.exit_code == 4


def test_verify_smallest_collision_pair():
    # star, center 1, leaves 2, 2, 3, 3: pairs (1,2) and (3,4) collide
    v = verify_locating(star(5), Coloring(3, (1, 2, 2, 3, 3)))
    assert v.witness == (1, 2)


def test_verify_rejects_mismatched_sizes():
    with pytest.raises(ValueError):
        verify_locating(path(3), Coloring(2, (1, 2)))


def test_four_coloring_of_comb_ok():
    t, c = comb_four_coloring()
    assert verify_locating(t, c).ok


def test_ray_collision_found_analytically():
    # two rays at one vertex with the same pattern collide at equal depth
    t = Tree.from_edges(1, [], {0: 2})
    c = Coloring(3, (3,), {(0, 0): (1, 2), (0, 1): (1, 2)})
    v = verify_locating(t, c)
    assert v.kind is VerdictKind.COLLISION
    assert v.witness == (RayVertex(0, 0, 1), RayVertex(0, 1, 1))


def test_two_ended_path_ok():
    t = Tree.from_edges(1, [], {0: 2})
    c = Coloring(3, (3,), {(0, 0): (1, 2), (0, 1): (2, 1)})
    assert verify_locating(t, c).ok


def test_ray_improper_pattern():
    t = Tree.from_edges(1, [], {0: 1})
    c = Coloring(2, (1,), {(0, 0): (1, 2)})
    assert verify_locating(t, c).kind is VerdictKind.IMPROPER


def _ray_cases(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 10)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        rays = {}
        for _ in range(rng.randint(1, 3)):
            v = rng.randrange(n)
            rays[v] = rays.get(v, 0) + 1
        t = Tree.from_edges(n, edges, rays)
        k = rng.randint(3, 5)
        c = random_proper(t, k, rng)
        if len(c.used_colors()) == k:
            out.append((t, c))
    return out


@pytest.mark.parametrize("t, c", _ray_cases(120, 7))
def test_ray_verdict_matches_materialization(t, c):
    """Analytic ray handling agrees with unrolling every ray to 3x saturation depth."""
    depth = 3 * saturation_depth(t, c.k)
    big, bc, labels = materialize(t, c, depth)
    assert big.n <= t.n + 3 * depth
    analytic = verify_locating(t, c)
    finite = verify_locating(big, bc)
    if analytic.kind is VerdictKind.COLLISION:
        a, b = analytic.witness
        deep = any(isinstance(x, RayVertex) and x.depth > depth - 1 for x in (a, b))
        if not deep:
            assert finite.kind is VerdictKind.COLLISION
            assert tuple(labels[x] for x in finite.witness) == (a, b)
    else:
        assert finite.kind is analytic.kind
    # every vertex code seen in the unrolled tree matches the analytic one
    codes = explicit_codes(big, bc)
    for vid, label in enumerate(labels):
        if isinstance(label, RayVertex) and label.depth < depth:
            assert codes[vid] == color_code(t, c, label)


def test_materialize_needs_depth_two():
    t = Tree.from_edges(1, [], {0: 1})
    with pytest.raises(ValueError):
        materialize(t, Coloring(2, (1,), {(0, 0): (2, 1)}), 1)


# -- invariants ----------------------------------------------------------------

def _seeded_pairs(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 14)
        t = Tree.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])
        k = rng.randint(2, min(5, n))
        c = random_proper(t, k, rng)
        if len(c.used_colors()) == k:
            out.append((t, c))
    return out


@pytest.mark.parametrize("t, c", _seeded_pairs(30, 3))
def test_verdict_invariant_under_permutation(t, c):
    kind = verify_locating(t, c).kind
    for perm in itertools.permutations(range(1, c.k + 1)):
        assert verify_locating(t, relabel(c, perm)).kind is kind


@pytest.mark.parametrize("t, c", _seeded_pairs(30, 4))
def test_own_color_zero_and_eccentricity(t, c):
    for v, code in enumerate(explicit_codes(t, c)):
        assert [i + 1 for i, x in enumerate(code) if x == 0] == [c.assignment[v]]
        assert max(code) <= eccentricity(t, v)


def test_relabel_identity_and_involution():
    c = Coloring(3, (3, 1, 2, 1), {(0, 0): (1, 2)})
    assert relabel(c, [1, 2, 3]) == c
    swap = {1: 2, 2: 1, 3: 3}
    assert relabel(relabel(c, swap), swap) == c
    assert relabel(c, swap).ray_patterns == {(0, 0): (2, 1)}


@pytest.mark.parametrize("perm", [[1, 1, 2], [1, 2], {1: 2, 2: 3, 3: 4}])
def test_relabel_rejects_non_bijection(perm):
    with pytest.raises(ValueError):
        relabel(Coloring(3, (1, 2, 3)), perm)


# -- file format ---------------------------------------------------------------

def test_coloring_round_trip():
    c = Coloring(3, (3, 1), {(1, 0): (2, 1)})
    text = serialize_coloring(c)
    assert text == "k 3\nc 0 3\nc 1 1\np 1 0 2 1\n"
    assert parse_coloring(text) == c


@pytest.mark.parametrize(
    "text",
    ["c 0 1\n", "k 2\nc 0 1\nc 0 2\n", "k 2\nc 1 1\n", "k 2\nc 0 3\n", "k 2\nz 1\n", ""],
)
def test_coloring_parse_errors(text):
    with pytest.raises(ColoringFormatError):
        parse_coloring(text)
