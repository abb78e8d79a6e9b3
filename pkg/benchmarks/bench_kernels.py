"""Time the compiled and pure-Python search kernels on the same instances.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from loccol import families
from loccol.exact import _prepare
from loccol.kernels import backends
from loccol.tree import distance_matrix

SEARCH_CASES = [
    ("caterpillar(3,3) k=3", families.caterpillar(3, 3), 3),  # infeasible: full refutation
    ("firecracker(3,4) k=3", families.firecracker(3, 4), 3),  # infeasible
    ("complete_nary(2,3) k=3", families.complete_nary(2, 3), 3),  # infeasible
    ("lobster(3,2) k=3", families.lobster(3, 2), 3),
    ("complete_nary(2,4) k=4", families.complete_nary(2, 4), 4),
]
BRUTE_CASES = [
    ("banana(2,4) k=3", families.banana(2, 4), 3),
    ("amalgamation_star(3,3) k=3", families.amalgamation_star(3, 3), 3),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = backends()
    names = list(mods)
    print(f"{'case':36} " + " ".join(f"{n:>12}" for n in names) + "   speedup")
    for label, t, k in SEARCH_CASES:
        p = _prepare(t)
        row = {}
        for name, mod in mods.items():
            row[name], out = best_of(
                lambda: mod.search(p.dist, p.parent, p.trig_start, p.trig_x, p.trig_y, k, True, 10**9),
                args.repeat,
            )
        _report("search " + label, names, row)
    for label, t, k in BRUTE_CASES:
        dist = np.array(distance_matrix(t), dtype=np.int32)
        eu = np.array([u for u, _ in t.sorted_edges()], dtype=np.int32)
        ev = np.array([v for _, v in t.sorted_edges()], dtype=np.int32)
        row = {}
        for name, mod in mods.items():
            row[name], _ = best_of(lambda: mod.brute_force(dist, eu, ev, k), args.repeat)
        _report("brute " + label, names, row)


def _report(label, names, row):
    cells = " ".join(f"{row[n] * 1e3:10.2f}ms" for n in names)
    speed = ""
    if "python" in row and "cython" in row and row["cython"] > 0:
        speed = f"{row['python'] / row['cython']:8.1f}x"
    print(f"{label:36} {cells} {speed}")


if __name__ == "__main__":
    main()
