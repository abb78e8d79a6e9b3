# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirrors ``_pykernels`` exactly (results and node counts)."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()

cdef enum:
    INF = 1073741824
    C_FOUND = 1
    C_EXHAUSTED = 0
    C_BUDGET = -1

FOUND = C_FOUND
EXHAUSTED = C_EXHAUSTED
BUDGET = C_BUDGET


cdef bint _pairs_ok(const int[:, ::1] dist, int* colors, int level, int k,
                    const long long[::1] trig_start, const int[::1] trig_x,
                    const int[::1] trig_y, int* mx, int* my) nogil:
    cdef long long j
    cdef int x, y, w, col, i
    cdef bint same
    for j in range(trig_start[level], trig_start[level + 1]):
        x = trig_x[j]
        y = trig_y[j]
        if colors[x] != colors[y]:
            continue
        for i in range(k + 1):
            mx[i] = INF
            my[i] = INF
        for w in range(level + 1):
            col = colors[w]
            if dist[x, w] < mx[col]:
                mx[col] = dist[x, w]
            if dist[y, w] < my[col]:
                my[col] = dist[y, w]
        same = True
        for i in range(1, k + 1):
            if mx[i] != my[i]:
                same = False
                break
        if same:
            return False
    return True


cdef bint _complete_ok(const int[:, ::1] dist, int* colors, int n, int k, int* code) nogil:
    cdef int v, w, i, col
    cdef bint same
    for v in range(n):
        for i in range(k + 1):
            code[v * (k + 1) + i] = INF
        for w in range(n):
            col = colors[w]
            if dist[v, w] < code[v * (k + 1) + col]:
                code[v * (k + 1) + col] = dist[v, w]
    for v in range(n):
        for w in range(v + 1, n):
            if colors[v] != colors[w]:
                continue
            same = True
            for i in range(1, k + 1):
                if code[v * (k + 1) + i] != code[w * (k + 1) + i]:
                    same = False
                    break
            if same:
                return False
    return True


def search(dist, parent, trig_start, trig_x, trig_y, int k, bint symmetry, long long budget):
    cdef const int[:, ::1] D = np.ascontiguousarray(dist, dtype=np.int32)
    cdef const int[::1] P = np.ascontiguousarray(parent, dtype=np.int32)
    cdef const long long[::1] TS = np.ascontiguousarray(trig_start, dtype=np.int64)
    cdef const int[::1] TX = np.ascontiguousarray(trig_x, dtype=np.int32)
    cdef const int[::1] TY = np.ascontiguousarray(trig_y, dtype=np.int32)
    cdef int n = P.shape[0]
    cdef long long nodes = 0
    if k < 1 or k > n:
        return EXHAUSTED, [], nodes
    cdef int* colors = <int*>calloc(n, sizeof(int))
    cdef int* cur = <int*>calloc(n, sizeof(int))
    cdef int* maxc = <int*>calloc(n + 1, sizeof(int))
    cdef int* cnt = <int*>calloc(k + 1, sizeof(int))
    cdef int* mx = <int*>malloc((k + 1) * sizeof(int))
    cdef int* my = <int*>malloc((k + 1) * sizeof(int))
    cdef int* code = <int*>malloc(n * (k + 1) * sizeof(int))
    cdef int level = 0, distinct = 0, old, limit, pc, c, status = C_EXHAUSTED
    cdef bint advanced
    try:
        with nogil:
            while level >= 0:
                old = colors[level]
                if old:
                    cnt[old] -= 1
                    if cnt[old] == 0:
                        distinct -= 1
                    colors[level] = 0
                if symmetry:
                    limit = maxc[level] + 1
                    if limit > k:
                        limit = k
                else:
                    limit = k
                pc = colors[P[level]] if P[level] >= 0 else 0
                c = cur[level] + 1
                advanced = False
                while c <= limit:
                    if c != pc:
                        nodes += 1
                        if nodes > budget:
                            status = C_BUDGET
                            break
                        colors[level] = c
                        cnt[c] += 1
                        if cnt[c] == 1:
                            distinct += 1
                        if (distinct + (n - level - 1) >= k
                                and _pairs_ok(D, colors, level, k, TS, TX, TY, mx, my)
                                and (level < n - 1 or _complete_ok(D, colors, n, k, code))):
                            advanced = True
                            break
                        cnt[c] -= 1
                        if cnt[c] == 0:
                            distinct -= 1
                        colors[level] = 0
                    c += 1
                if status == C_BUDGET:
                    break
                if advanced:
                    cur[level] = c
                    if level == n - 1:
                        status = C_FOUND
                        break
                    maxc[level + 1] = maxc[level] if maxc[level] > c else c
                    level += 1
                    cur[level] = 0
                else:
                    cur[level] = 0
                    level -= 1
        if status == C_FOUND:
            return FOUND, [colors[i] for i in range(n)], nodes
        return status, [], nodes
    finally:
        free(colors); free(cur); free(maxc); free(cnt); free(mx); free(my); free(code)


def brute_force(dist, eu, ev, int k):
    cdef const int[:, ::1] D = np.ascontiguousarray(dist, dtype=np.int32)
    cdef const int[::1] EU = np.ascontiguousarray(eu, dtype=np.int32)
    cdef const int[::1] EV = np.ascontiguousarray(ev, dtype=np.int32)
    cdef int n = D.shape[0]
    cdef int m = EU.shape[0]
    cdef int* a = <int*>calloc(n, sizeof(int))
    cdef int* seen = <int*>calloc(k + 1, sizeof(int))
    cdef int* code = <int*>malloc(n * (k + 1) * sizeof(int))
    cdef long long checked = 0
    cdef int i, v, w, e, pos, distinct, col
    cdef bint ok, found = False, done = False
    if k < 1:
        return False, [], 0
    try:
        for i in range(n):
            a[i] = 1
        with nogil:
            while not done:
                checked += 1
                ok = True
                for e in range(m):
                    if a[EU[e]] == a[EV[e]]:
                        ok = False
                        break
                if ok:
                    for i in range(k + 1):
                        seen[i] = 0
                    distinct = 0
                    for v in range(n):
                        if not seen[a[v]]:
                            seen[a[v]] = 1
                            distinct += 1
                    ok = distinct == k
                if ok:
                    for v in range(n):
                        for i in range(k + 1):
                            code[v * (k + 1) + i] = INF
                        for w in range(n):
                            col = a[w]
                            if D[v, w] < code[v * (k + 1) + col]:
                                code[v * (k + 1) + col] = D[v, w]
                    for v in range(n):
                        for w in range(v + 1, n):
                            if a[v] != a[w]:
                                continue
                            for i in range(1, k + 1):
                                if code[v * (k + 1) + i] != code[w * (k + 1) + i]:
                                    break
                            else:
                                ok = False
                            if not ok:
                                break
                        if not ok:
                            break
                if ok:
                    found = True
                    break
                # odometer, last vertex fastest
                pos = n - 1
                while pos >= 0:
                    if a[pos] < k:
                        a[pos] += 1
                        break
                    a[pos] = 1
                    pos -= 1
                if pos < 0:
                    done = True
        if found:
            return True, [a[i] for i in range(n)], checked
        return False, [], checked
    finally:
        free(a); free(seen); free(code)
