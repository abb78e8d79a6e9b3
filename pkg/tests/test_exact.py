import numpy as np
import pytest

from loccol import kernels
from loccol.coloring import verify_locating
from loccol.exact import (
    DEFAULT_BUDGET,
    UNKNOWN,
    SearchConfig,
    _prepare,
    brute_force_chi_L,
    default_budget,
    exact_chi_L,
    is_locating_k_colorable,
    pair_triggers,
    search_root,
)
from loccol.families import caterpillar, complete_nary, double_star, lobster, star
from loccol.paint import color_tree, degree_lower_bound
from loccol.tree import Tree, distance_matrix

from .conftest import all_free_trees, path, seeded_trees

BACKENDS = kernels.backends()


def test_compiled_backend_available():
    assert "cython" in BACKENDS and kernels.BACKEND == "cython"


def test_p4_not_two_colorable():
    assert is_locating_k_colorable(path(4), 2) is None


def test_p4_three_colorable():
    w = is_locating_k_colorable(path(4), 3)
    assert w is not None and w.k == 3 and verify_locating(path(4), w).ok


def test_k1():
    w = is_locating_k_colorable(Tree.from_edges(1, []), 1)
    assert w.assignment == (1,)
    assert exact_chi_L(Tree.from_edges(1, [])).chi_L == 1


@pytest.mark.parametrize("n", range(3, 9))
def test_paths(n):
    assert exact_chi_L(path(n)).chi_L == 3


@pytest.mark.parametrize("n", range(3, 8))
def test_stars(n):
    assert exact_chi_L(star(n)).chi_L == n


def test_double_star_2_3():
    res = exact_chi_L(double_star(2, 3))
    assert res.chi_L == 4 and res.witness.k == 4 and res.known


def test_k_out_of_range():
    assert is_locating_k_colorable(path(3), 4) is None
    assert is_locating_k_colorable(path(3), 0) is None


def test_budget_exhaustion_is_unknown():
    t = complete_nary(2, 4)
    assert is_locating_k_colorable(t, 4, SearchConfig(node_budget=10)) is UNKNOWN
    res = exact_chi_L(t, SearchConfig(node_budget=10))
    assert res.chi_L is UNKNOWN and not res.known and res.witness is None
    assert str(UNKNOWN) == "UNKNOWN"


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("LOCCOL_BUDGET", "7")
    assert default_budget() == 7 and SearchConfig().budget == 7
    monkeypatch.delenv("LOCCOL_BUDGET")
    assert default_budget() == DEFAULT_BUDGET


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(node_budget=0)
    with pytest.raises(ValueError):
        SearchConfig(k_min=5, k_max=3)


def test_rays_rejected():
    with pytest.raises(ValueError):
        exact_chi_L(Tree.from_edges(1, [], {0: 1}))


def test_kmax_cap_gives_unknown():
    res = exact_chi_L(star(6), SearchConfig(k_max=5))
    assert res.chi_L is UNKNOWN


def test_search_root_is_lowest_max_degree_vertex():
    t = Tree.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert search_root(t) == 1


@pytest.mark.parametrize("t", seeded_trees(20, 2, 30, 5, seed=2), ids=lambda t: f"n{t.n}")
def test_pair_triggers_are_last_separators(t):
    d = np.array(distance_matrix(t), dtype=np.int32)
    start, xs, ys = pair_triggers(d)
    assert start[-1] == len(xs) == t.n * (t.n - 1) // 2
    for q in range(t.n):
        for j in range(start[q], start[q + 1]):
            x, y = xs[j], ys[j]
            assert x < y <= q
            assert d[x, q] != d[y, q]
            assert all(d[x, w] == d[y, w] for w in range(q + 1, t.n))


@pytest.mark.parametrize("t", list(all_free_trees(7)), ids=lambda t: f"n{t.n}")
def test_matches_brute_force(t):
    k, bf = brute_force_chi_L(t)
    assert verify_locating(t, bf).ok
    for sym in (True, False):
        res = exact_chi_L(t, SearchConfig(symmetry_breaking=sym))
        assert res.chi_L == k
        assert verify_locating(t, res.witness).ok and res.witness.k == k


def test_brute_force_rejects_rays():
    with pytest.raises(ValueError):
        brute_force_chi_L(Tree.from_edges(1, [], {0: 1}))


def _kernel_cases():
    cases = [(t, k) for t in seeded_trees(25, 4, 14, 5, seed=9) for k in (3, 4)]
    cases += [(caterpillar(3, 3), 3), (caterpillar(3, 3), 5), (lobster(2, 2), 3), (complete_nary(2, 3), 3)]
    return cases


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("t, k", _kernel_cases(), ids=lambda x: f"n{x.n}" if isinstance(x, Tree) else f"k{x}")
@pytest.mark.parametrize("sym", [True, False])
def test_backends_agree_exactly(t, k, sym):
    p = _prepare(t)
    args = (p.dist, p.parent, p.trig_start, p.trig_x, p.trig_y, k, sym, 10**7)
    out = {name: mod.search(*args) for name, mod in BACKENDS.items()}
    assert out["python"] == out["cython"]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree_on_budget():
    p = _prepare(complete_nary(2, 4))
    args = (p.dist, p.parent, p.trig_start, p.trig_x, p.trig_y, 4, True, 500)
    py, cy = (BACKENDS[n].search(*args) for n in ("python", "cython"))
    assert py == cy and py[0] == kernels.BUDGET and py[2] == 501


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("t", seeded_trees(10, 3, 7, 4, seed=5), ids=lambda t: f"n{t.n}")
def test_brute_force_backends_agree(t):
    d = np.array(distance_matrix(t), dtype=np.int32)
    eu = np.array([u for u, _ in t.sorted_edges()], dtype=np.int32)
    ev = np.array([v for _, v in t.sorted_edges()], dtype=np.int32)
    for k in range(1, t.n + 1):
        assert BACKENDS["python"].brute_force(d, eu, ev, k) == BACKENDS["cython"].brute_force(d, eu, ev, k)


def test_deterministic_witness():
    t = lobster(2, 2)
    a, b = exact_chi_L(t), exact_chi_L(t)
    assert a == b


@pytest.mark.parametrize("t", seeded_trees(15, 5, 10, 5, seed=21), ids=lambda t: f"n{t.n}")
def test_sandwich(t):
    res = exact_chi_L(t)
    _, report, _ = color_tree(t)
    assert degree_lower_bound(t) <= res.chi_L <= report.used <= report.upper
