"""Pure-Python search kernels.

Same contract as the compiled ``_ckernels`` module; used when the extension is
not built or when ``LOCCOL_PURE_PYTHON=1``.

Vertices are indexed in search order.  ``dist`` is the distance matrix in that
order, ``parent[v]`` the unique earlier neighbour (-1 for the root).  The pair
triggers are a CSR layout: pairs ``(trig_x[j], trig_y[j])`` for
``trig_start[q] <= j < trig_start[q+1]`` become checkable once vertex ``q`` is
colored, because every later vertex is equidistant from both.
"""
from itertools import product

FOUND, EXHAUSTED, BUDGET = 1, 0, -1


def _pairs_ok(dist, colors, level, k, trig_start, trig_x, trig_y):
    inf = 1 << 30
    for j in range(trig_start[level], trig_start[level + 1]):
        x = trig_x[j]
        y = trig_y[j]
        if colors[x] != colors[y]:
            continue
        mx = [inf] * (k + 1)
        my = [inf] * (k + 1)
        dx = dist[x]
        dy = dist[y]
        for w in range(level + 1):
            col = colors[w]
            if dx[w] < mx[col]:
                mx[col] = dx[w]
            if dy[w] < my[col]:
                my[col] = dy[w]
        if mx == my:
            return False
    return True


def _complete_ok(dist, colors, n, k):
    codes = set()
    for v in range(n):
        row = dist[v]
        code = [1 << 30] * (k + 1)
        for w in range(n):
            if row[w] < code[colors[w]]:
                code[colors[w]] = row[w]
        code = tuple(code)
        if code in codes:
            return False
        codes.add(code)
    return True


def search(dist, parent, trig_start, trig_x, trig_y, k, symmetry, budget):
    """Depth-first search for a locating k-coloring.

    Returns ``(status, colors, nodes)``.  The first coloring found is the
    lexicographically smallest in search order among those explored.
    """
    n = len(parent)
    dist = [list(map(int, row)) for row in dist]
    parent = [int(p) for p in parent]
    trig_start = [int(x) for x in trig_start]
    trig_x = [int(x) for x in trig_x]
    trig_y = [int(x) for x in trig_y]
    nodes = 0
    if k < 1 or k > n:
        return EXHAUSTED, [], nodes
    colors = [0] * n
    cnt = [0] * (k + 1)
    distinct = 0
    cur = [0] * n
    maxc = [0] * (n + 1)
    level = 0
    while level >= 0:
        old = colors[level]
        if old:
            cnt[old] -= 1
            if cnt[old] == 0:
                distinct -= 1
            colors[level] = 0
        limit = min(k, maxc[level] + 1) if symmetry else k
        pc = colors[parent[level]] if parent[level] >= 0 else 0
        c = cur[level] + 1
        advanced = False
        while c <= limit:
            if c != pc:
                nodes += 1
                if nodes > budget:
                    return BUDGET, [], nodes
                colors[level] = c
                cnt[c] += 1
                if cnt[c] == 1:
                    distinct += 1
                if (
                    distinct + (n - level - 1) >= k
                    and _pairs_ok(dist, colors, level, k, trig_start, trig_x, trig_y)
                    and (level < n - 1 or _complete_ok(dist, colors, n, k))
                ):
                    advanced = True
                    break
                cnt[c] -= 1
                if cnt[c] == 0:
                    distinct -= 1
                colors[level] = 0
            c += 1
        if advanced:
            cur[level] = c
            if level == n - 1:
                return FOUND, colors[:], nodes
            maxc[level + 1] = max(maxc[level], c)
            level += 1
            cur[level] = 0
        else:
            cur[level] = 0
            level -= 1
    return EXHAUSTED, [], nodes


def brute_force(dist, eu, ev, k):
    """Scan all k^n assignments in lexicographic order; first locating one wins.

    No pruning of any kind: every assignment is generated and filtered whole.
    Returns ``(found, colors, checked)``.
    """
    n = len(dist)
    dist = [list(map(int, row)) for row in dist]
    edges = list(zip(map(int, eu), map(int, ev)))
    checked = 0
    for assign in product(range(1, k + 1), repeat=n):
        checked += 1
        if any(assign[u] == assign[v] for u, v in edges):
            continue
        if len(set(assign)) != k:
            continue
        codes = set()
        for v in range(n):
            row = dist[v]
            code = tuple(min(row[w] for w in range(n) if assign[w] == i) for i in range(1, k + 1))
            if code in codes:
                break
            codes.add(code)
        else:
            return True, list(assign), checked
    return False, [], checked
