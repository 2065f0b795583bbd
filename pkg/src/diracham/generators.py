"""Seeded instance generators for the two relaxations of Dirac's condition.

``count-relaxed``: at least ``n - k`` vertices have degree >= n/2.
``degree-relaxed``: every vertex has degree >= ceil(n/2) - k.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleSpec
from .graph import Graph

MODELS = ("count-relaxed", "degree-relaxed")


@dataclass(frozen=True)
class InstanceSpec:
    model: str
    n: int
    k: int
    seed: int
    planted: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise InfeasibleSpec(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 3:
            raise InfeasibleSpec("n must be at least 3")
        if not 0 <= self.k <= self.n:
            raise InfeasibleSpec("k must satisfy 0 <= k <= n")


@dataclass(frozen=True)
class Instance:
    spec: InstanceSpec
    graph: Graph
    planted_cycle: tuple[int, ...] | None


def half(n: int) -> int:
    """Smallest integer degree d with d >= n/2."""
    return (n + 1) // 2


def generate(spec: InstanceSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    a = np.zeros((n, n), dtype=bool)
    cycle = None
    if spec.planted:
        cycle = tuple(int(v) for v in rng.permutation(n))
        order = np.array(cycle)
        a[order, np.roll(order, -1)] = True
        a[np.roll(order, -1), order] = True
    if spec.model == "count-relaxed":
        _count_relaxed(a, spec.k, rng)
    else:
        _degree_relaxed(a, spec.k, rng)
    return Instance(spec, Graph.from_matrix(a), cycle)


def _random_symmetric(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T


def _repair(a: np.ndarray, who: np.ndarray, target: int, pool: np.ndarray,
            rng: np.random.Generator) -> None:
    """Raise every vertex in ``who`` to degree >= target using partners from ``pool``.

    Deficient partners are preferred so repairs do not overshoot.
    """
    deg = a.sum(axis=1)
    for v in rng.permutation(np.flatnonzero(who)):
        need = target - deg[v]
        if need <= 0:
            continue
        cand = np.flatnonzero(pool & ~a[v])
        cand = cand[cand != v]
        if len(cand) < need:
            raise InfeasibleSpec(f"cannot raise vertex {v} to degree {target}")
        cand = rng.permutation(cand)
        cand = cand[np.argsort(deg[cand] >= target, kind="stable")][:need]
        a[v, cand] = a[cand, v] = True
        deg[v] += len(cand)
        deg[cand] += 1


def _count_relaxed(a: np.ndarray, k: int, rng: np.random.Generator) -> None:
    n = a.shape[0]
    target = half(n)
    sparse = np.zeros(n, dtype=bool)
    sparse[rng.choice(n, size=k, replace=False)] = True
    dense = ~sparse
    nd = n - k
    if nd and nd - 1 + k < target:
        raise InfeasibleSpec("degree bound exceeds the available partners")
    if nd > 1:
        # expected degree a few standard deviations above the bound, then repaired
        slack = 2.0 * np.sqrt(n)
        p = min(1.0, (target + slack) / (nd - 1))
        block = _random_symmetric(rng, nd, p)
        idx = np.flatnonzero(dense)
        a[np.ix_(idx, idx)] |= block
    cap = max(1, min(target - 1, 6))
    for s in np.flatnonzero(sparse):
        have = int(a[s].sum())
        extra = int(rng.integers(1, cap + 1)) - have
        if extra > 0:
            cand = np.flatnonzero(~a[s])
            cand = cand[cand != s]
            pick = rng.choice(cand, size=min(extra, len(cand)), replace=False)
            a[s, pick] = a[pick, s] = True
    pool = dense.copy()
    if nd - 1 < target:
        pool[:] = True
    _repair(a, dense, target, pool, rng)


def _degree_relaxed(a: np.ndarray, k: int, rng: np.random.Generator) -> None:
    n = a.shape[0]
    target = max(0, half(n) - k)
    if target > n - 1:
        raise InfeasibleSpec("degree bound exceeds n - 1")
    p = min(1.0, (target + 0.5) / (n - 1))
    a |= _random_symmetric(rng, n, p)
    _repair(a, np.ones(n, dtype=bool), target, np.ones(n, dtype=bool), rng)
