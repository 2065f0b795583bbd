"""Colour-coding search for a cover of a graph by exactly ``n - t`` disjoint paths.

A cover by ``n - t`` paths puts at most ``2t`` vertices on nontrivial paths.
A random ``2t``-colouring makes those vertices colourful with probability at
least ``e^{-2t}``; for a fixed colouring, a DP over colour subsets decides
whether a colourful system of paths saves ``t`` paths. Repeating for
``ceil(e^{2t} ln(1/epsilon))`` colourings misses an existing cover with
probability at most ``epsilon``. The error is one-sided: a returned cover is
always checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import bitset, kernels
from .errors import ContractViolation, Refusal
from .graph import Graph

DEFAULT_EPSILON = 1e-6
TRIAL_CAP = 10_000_000
MAX_COLORS = 24


@dataclass(frozen=True)
class PathCover:
    paths: tuple[tuple[int, ...], ...]

    @property
    def covered(self) -> int:
        return bitset.from_iter(v for p in self.paths for v in p)

    def __len__(self) -> int:
        return len(self.paths)

    def nontrivial_vertices(self) -> int:
        return sum(len(p) for p in self.paths if len(p) > 1)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.paths]


def check_path_cover(g: Graph, cover: PathCover, vertices: int | None = None,
                     count: int | None = None) -> None:
    """Raise unless ``cover`` is a set of disjoint paths of ``g`` covering exactly ``vertices``."""
    seen = 0
    for p in cover.paths:
        if not p:
            raise ContractViolation("empty path in cover")
        for v in p:
            if (seen >> v) & 1:
                raise ContractViolation(f"vertex {v} appears twice in the cover")
            seen |= 1 << v
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise ContractViolation(f"path step {a}-{b} is not an edge")
    if vertices is not None and seen != vertices:
        raise ContractViolation("cover does not match the target vertex set")
    if count is not None and len(cover.paths) != count:
        raise ContractViolation(f"cover has {len(cover.paths)} paths, expected {count}")


@dataclass(frozen=True)
class TrialPlan:
    t: int
    epsilon: float = DEFAULT_EPSILON
    master_seed: int = 0
    trials: int = field(default=-1)

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("deficiency t must be non-negative")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        need = required_trials(self.t, self.epsilon)
        if self.trials == -1:
            object.__setattr__(self, "trials", need)
        elif self.trials < need:
            raise ValueError(f"{self.trials} trials cannot reach epsilon={self.epsilon}; need {need}")

    @property
    def colors(self) -> int:
        return 2 * self.t


def required_trials(t: int, epsilon: float) -> int:
    if t == 0:
        return 1
    return math.ceil(math.exp(2 * t) * math.log(1 / epsilon))


def _color_blocks(plan: TrialPlan, n: int, block: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(first_trial, colors[trials, n])``. Row ``i`` overall is trial ``i``.

    Colours come from one float64 stream per master seed, so the split into
    blocks does not change any trial's colouring.
    """
    rng = np.random.default_rng(plan.master_seed)
    if block is None:
        block = max(1, (1 << 20) // max(n, 1))
    done = 0
    while done < plan.trials:
        size = min(block, plan.trials - done)
        draws = rng.random((size, n))
        yield done, np.minimum((draws * plan.colors).astype(np.int64), plan.colors - 1)
        done += size


def make_colorings(plan: TrialPlan, n: int) -> Iterator[np.ndarray]:
    """Colourings ``f: V -> {0, .., 2t-1}`` for trials ``0, 1, ..`` in order."""
    if plan.t == 0:
        yield np.zeros(n, dtype=np.int64)
        return
    for _, colors in _color_blocks(plan, n):
        yield from colors


def coloring(plan: TrialPlan, n: int, i: int) -> np.ndarray:
    """Trial ``i``'s colouring (regenerates the stream prefix)."""
    for j, f in enumerate(make_colorings(plan, n)):
        if j == i:
            return f
    raise IndexError(i)


@dataclass
class ColoringDP:
    """Filled table ``T[X, v]`` for one colouring plus the first accepting state."""

    table: np.ndarray
    colors: np.ndarray
    t: int
    X: int
    v: int

    def paths(self, g: Graph) -> list[list[int]]:
        """Colourful paths realising ``T[X, v]`` (extend along an edge first, then lowest id)."""
        table, f = self.table, self.colors
        xs, v = self.X, self.v
        chains = [[v]]
        while True:
            b = int(table[xs, v])
            sub = xs ^ (1 << int(f[v]))
            if sub == 0:
                break
            nxt = -1
            for u in g.neighbors(v):
                if table[sub, u] == b:
                    nxt = u
                    break
            if nxt >= 0:
                chains[-1].append(nxt)
            else:
                nxt = int(np.flatnonzero(table[sub] == b - 1)[0])
                chains.append([nxt])
            xs, v = sub, nxt
        return [list(reversed(c)) for c in reversed(chains)]


def dp_single_coloring(g: Graph, f: Sequence[int], t: int) -> ColoringDP | None:
    """Fill the subset DP for colouring ``f`` and return the first ``(X, v)`` with T <= |X| - t."""
    f = np.asarray(f, dtype=np.int64)
    ncolors = max(int(f.max()) + 1 if len(f) else 0, 2 * t)
    if ncolors > MAX_COLORS:
        raise Refusal(f"{ncolors} colours exceed the table cap of {MAX_COLORS}")
    indptr, indices = g.adjacency_lists()
    table = kernels.color_coding_table(indptr, indices, f, ncolors)
    for xs in range(1, 1 << ncolors):
        hit = np.flatnonzero(table[xs] <= xs.bit_count() - t)
        if len(hit):
            return ColoringDP(table, f, t, xs, int(hit[0]))
    return None


def _pad(paths: list[list[int]], n: int, want: int) -> PathCover:
    used = bitset.from_iter(v for p in paths for v in p)
    out = [list(p) for p in paths]
    out += [[v] for v in range(n) if not (used >> v) & 1]
    i = 0
    while len(out) < want:
        while len(out[i]) < 2:
            i += 1
        out.append([out[i].pop()])
    return PathCover(tuple(tuple(p) for p in out))


def cover_with_deficiency(g: Graph, t: int, plan: TrialPlan | None = None) -> PathCover | None:
    """Cover all of ``g`` by exactly ``n - t`` disjoint paths, or ``None``.

    ``None`` means no cover exists or every trial missed one; the latter has
    probability at most ``plan.epsilon`` when a cover exists.
    """
    n = g.n
    if not 0 <= t <= n:
        raise ValueError(f"deficiency t={t} outside [0, {n}]")
    if plan is None:
        plan = TrialPlan(t)
    elif plan.t != t:
        raise ValueError("plan was made for a different deficiency")
    if t == 0:
        return PathCover(tuple((v,) for v in range(n)))
    if t == n:
        return None
    if plan.colors > MAX_COLORS:
        raise Refusal(f"deficiency {t} needs {plan.colors} colours, above cap {MAX_COLORS}")
    if plan.trials > TRIAL_CAP:
        raise Refusal(f"deficiency {t} needs {plan.trials} trials, above cap {TRIAL_CAP}")
    indptr, indices = g.adjacency_lists()
    for start, colors in _color_blocks(plan, n):
        trial, xs, v = kernels.color_coding_trials(indptr, indices, colors, plan.colors, t)
        if trial < 0:
            continue
        f = colors[trial]
        table = kernels.color_coding_table(indptr, indices, f, plan.colors)
        dp = ColoringDP(table, f, t, int(xs), int(v))
        paths = dp.paths(g)
        if sum(len(p) for p in paths) > xs.bit_count():
            raise ContractViolation("reconstruction used more vertices than colours")
        cover = _pad(paths, n, n - t)
        check_path_cover(g, cover, bitset.full(n), n - t)
        return cover
    return None


def cover_subgraph(g: Graph, vertices: int, paths: int, plan_epsilon: float = DEFAULT_EPSILON,
                   seed: int = 0) -> PathCover | None:
    """Cover ``G[vertices]`` by exactly ``paths`` disjoint paths; ids in the result are ``g``'s."""
    sub, vmap = g.induced(bitset.members(vertices))
    t = sub.n - paths
    if t < 0:
        return None
    cover = cover_with_deficiency(sub, t, TrialPlan(t, plan_epsilon, seed))
    if cover is None:
        return None
    return PathCover(tuple(tuple(vmap[v] for v in p) for p in cover.paths))
