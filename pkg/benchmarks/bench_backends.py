"""Compare the numba and numpy kernel backends on representative inputs.

    python3 benchmarks/bench_backends.py [--quick]

Every kernel runs once per backend on the same input (after a warm-up call so
JIT compilation is excluded) and the outputs are checked for equality.
"""
import argparse
import time

import numpy as np

from diracham import closure, generators, kernels
from diracham.graph import Graph

IMPLS = ("numba", "numpy")


def timed(fn, *args, repeat=3):
    fn(*args)
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(a | a.T)


def case_closure(n):
    g = generators.generate(generators.InstanceSpec("degree-relaxed", n, 2, 7)).graph

    def run(mod):
        a = g.matrix.astype(np.uint8)
        out_u = np.empty(n * n, np.int32)
        out_v = np.empty(n * n, np.int32)
        c = mod.closure_sweep(a, g.degrees.astype(np.int64), 0, np.zeros(n, bool), out_u, out_v)
        return np.stack([out_u[:c], out_v[:c]])
    return f"closure_sweep n={n}", run


def case_lift(n):
    g = generators.generate(generators.InstanceSpec("degree-relaxed", n, 2, 7)).graph
    closed, log = closure.augment(g)
    time_ = closure.edge_times(g, log)
    order = np.arange(n, dtype=np.int64)
    return f"lift_rotations n={n}", lambda mod: mod.lift_rotations(order.copy(), time_)[0]


def case_held_karp(n):
    g = random_graph(n, 0.35, 3)
    nb = np.array([g.rows[v] >> 1 for v in range(1, n)], dtype=np.int64)
    return f"held_karp_table n={n}", lambda mod: mod.held_karp_table(np.int64(g.rows[0] >> 1), nb)


def case_ie(n):
    g = random_graph(n, 0.5, 4)
    indptr, indices = g.adjacency_lists()
    return f"ie_signed_walks n={n}", lambda mod: mod.ie_signed_walks(indptr, indices, n, 2147483647)


def case_path_cover(n):
    g = random_graph(n, 0.25, 5)
    nb = np.array(g.rows, dtype=np.int64)
    return f"min_path_cover_table n={n}", lambda mod: mod.min_path_cover_table(nb)


def case_color_coding(n, t, trials):
    g = random_graph(n, 0.05, 6)
    indptr, indices = g.adjacency_lists()
    colors = np.random.default_rng(1).integers(0, 2 * t, size=(trials, n)).astype(np.int64)
    return (f"color_coding_trials n={n} t={t} x{trials}",
            lambda mod: np.array(mod.color_coding_trials(indptr, indices, colors, 2 * t, t)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    q = args.quick
    cases = [
        case_closure(150 if q else 400),
        case_lift(150 if q else 400),
        case_held_karp(14 if q else 18),
        case_ie(12 if q else 16),
        case_path_cover(12 if q else 16),
        case_color_coding(30, 3, 50 if q else 500),
    ]
    print(f"{'kernel':44s} {'numba [s]':>11s} {'numpy [s]':>11s} {'ratio':>8s}  same")
    for name, run in cases:
        res = {impl: timed(run, kernels.implementation(impl), repeat=1 if q else 3) for impl in IMPLS}
        same = np.array_equal(np.asarray(res["numba"][1]), np.asarray(res["numpy"][1]))
        tn, tp = res["numba"][0], res["numpy"][0]
        print(f"{name:44s} {tn:11.5f} {tp:11.5f} {tp / max(tn, 1e-9):8.1f}  {same}")


if __name__ == "__main__":
    main()
