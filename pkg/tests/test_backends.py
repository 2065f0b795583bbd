"""Both kernel backends must agree exactly on every kernel."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracham import closure, kernels
from diracham.graph import Graph

pytest.importorskip("numba")

NUMBA = kernels.implementation("numba")
NUMPY = kernels.implementation("numpy")


def rgraph(n, p, seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(a | a.T)


def both(fn_name, *args):
    outs = []
    for mod in (NUMBA, NUMPY):
        copied = [x.copy() if isinstance(x, np.ndarray) else x for x in args]
        outs.append((getattr(mod, fn_name)(*copied), copied))
    return outs


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 30), st.floats(0.1, 0.9), st.sampled_from([0, 1, 2]), seeds)
def test_closure_sweep(n, p, kind, seed):
    g = rgraph(n, p, seed)
    side = np.random.default_rng(seed + 1).random(n) < 0.5
    a = g.matrix.astype(np.uint8)
    args = (a, g.degrees.astype(np.int64), kind, side, np.empty(n * n, np.int32), np.empty(n * n, np.int32))
    (c1, w1), (c2, w2) = both("closure_sweep", *args)
    assert c1 == c2
    assert np.array_equal(w1[0], w2[0]) and np.array_equal(w1[1], w2[1])
    assert np.array_equal(w1[4][:c1], w2[4][:c2]) and np.array_equal(w1[5][:c1], w2[5][:c2])


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 40), seeds)
def test_lift_rotations(n, seed):
    g = rgraph(n, 0.45, seed)
    _, log = closure.augment(g)
    time_ = closure.edge_times(g, log)
    order = np.random.default_rng(seed).permutation(n).astype(np.int64)
    (r1, _), (r2, _) = both("lift_rotations", order, time_)
    assert all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(r1, r2))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 12), st.floats(0.2, 0.9), seeds)
def test_held_karp_table(n, p, seed):
    g = rgraph(n, p, seed)
    nb = np.array([g.rows[v] >> 1 for v in range(1, n)], dtype=np.int64)
    (t1, _), (t2, _) = both("held_karp_table", np.int64(g.rows[0] >> 1), nb)
    assert np.array_equal(t1, t2)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 11), st.floats(0.2, 0.9), seeds, st.sampled_from([2147483647, 1000003]))
def test_ie_signed_walks(n, p, seed, prime):
    g = rgraph(n, p, seed)
    indptr, indices = g.adjacency_lists()
    (r1, _), (r2, _) = both("ie_signed_walks", indptr, indices, n, prime)
    assert int(r1) == int(r2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 11), st.floats(0.0, 0.8), seeds)
def test_min_path_cover_table(n, p, seed):
    g = rgraph(n, p, seed)
    (t1, _), (t2, _) = both("min_path_cover_table", np.array(g.rows, dtype=np.int64))
    assert np.array_equal(t1, t2)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 16), st.integers(1, 4), st.floats(0.05, 0.6), seeds)
def test_color_coding(n, t, p, seed):
    g = rgraph(n, p, seed)
    indptr, indices = g.adjacency_lists()
    colors = np.random.default_rng(seed).integers(0, 2 * t, size=(6, n)).astype(np.int64)
    (r1, _), (r2, _) = both("color_coding_trials", indptr, indices, colors, 2 * t, t)
    assert tuple(map(int, r1)) == tuple(map(int, r2))
    (t1, _), (t2, _) = both("color_coding_table", indptr, indices, colors[0], 2 * t)
    assert np.array_equal(t1, t2)


def test_env_flag_selects_backend():
    import subprocess
    import sys
    code = "from diracham import kernels; print(kernels.BACKEND)"
    for flag in ("numpy", "numba"):
        out = subprocess.run([sys.executable, "-c", code], env={"DIRACHAM_BACKEND": flag, "PATH": ""},
                             capture_output=True, text=True, check=True).stdout.strip()
        assert out == flag
    bad = subprocess.run([sys.executable, "-c", code], env={"DIRACHAM_BACKEND": "gpu"},
                         capture_output=True, text=True)
    assert bad.returncode != 0


def test_unknown_implementation():
    with pytest.raises(ValueError):
        kernels.implementation("cuda")
