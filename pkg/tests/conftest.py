import random

import networkx as nx
import pytest

from loccol.families import random_tree
from loccol.tree import Tree


def free_trees(n):
    """All unlabeled trees on n vertices, as Tree objects."""
    if n == 1:
        yield Tree.from_edges(1, [])
        return
    for g in nx.nonisomorphic_trees(n):
        yield Tree.from_edges(n, list(g.edges()))


def all_free_trees(max_n):
    for n in range(1, max_n + 1):
        yield from free_trees(n)


def path(n):
    return Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def seeded_trees(count, lo, hi, max_degree, seed):
    rng = random.Random(seed)
    return [random_tree(rng.randint(lo, hi), max_degree, rng) for _ in range(count)]


@pytest.fixture
def spider():
    """Center 0 with three legs of length 2: 0-1-2, 0-3-4, 0-5-6."""
    return Tree.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
