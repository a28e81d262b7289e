"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs on both backends; results are checked for equality before
timing so a fast-but-wrong kernel cannot win.
"""

from __future__ import annotations

import argparse
import importlib
import random
import sys
import timeit

from prelorentz import Graph, leafy_star, replace_w4
from prelorentz import _kernels_py
from prelorentz.lorentz import _candidate_alphas, _weights, pre_lorentzian_polynomial, shift_by_xy


def complete(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def workloads():
    rng = random.Random(0)
    k4 = replace_w4(complete(4)).adjacency_masks()
    trees = []
    for _ in range(20):
        vs = [f"t{i}" for i in range(9)]
        edges = [(vs[i], vs[rng.randrange(i)]) for i in range(1, 9)]
        trees.append(replace_w4(Graph(vs, edges)).adjacency_masks())  # 57 vertices
    mats = []
    for _ in range(200):
        n = 8
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-20, 20)
        mats.append(m)
    h, x, y = pre_lorentzian_polynomial(leafy_star(4))
    q = shift_by_xy(h, x, y, 2)
    coeffs = dict(q.terms)
    alphas = _candidate_alphas(coeffs, q.nvars)
    weights = _weights(coeffs)
    return {
        "indep_counts R_W4(K4), 40 vertices": lambda k: k.indep_counts(k4),
        "indep_counts 20 R_W4(trees), 57 vertices": lambda k: [k.indep_counts(t) for t in trees],
        "charpoly 200 symmetric 8x8": lambda k: [k.charpoly(m) for m in mats],
        f"sweep_hessians L4 at k=2, {len(alphas)} Hessians": lambda k: k.sweep_hessians(
            coeffs, alphas, weights, True
        ),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        compiled = importlib.import_module("prelorentz._kernels")
    except ImportError:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':<46} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads().items():
        if fn(_kernels_py) != fn(compiled):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<46} {py:>10.4f} {cy:>10.4f} {py / cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
