"""Bondy-Chvatal edge augmentation and constructive cycle lifting.

Adding a missing edge ``uv`` whose endpoints have degree sum >= n preserves
Hamiltonicity in both directions. :func:`augment` applies such steps until no
eligible pair remains and records them in order; :func:`lift_cycle` walks the
record backwards, rotating each augmented edge out of a Hamiltonian cycle.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import bitset, kernels
from .errors import ContractViolation
from .graph import Graph, check_ham_cycle

_NEVER = np.iinfo(np.int32).max


@dataclass(frozen=True)
class EdgeFilter:
    """Which vertex pairs :func:`augment` may join.

    ``kind`` is ``"all"``, ``"within"`` (both endpoints in ``side``) or
    ``"between"`` (exactly one endpoint in ``side``).
    """

    kind: str = "all"
    side: int = 0

    _CODES = {"all": 0, "within": 1, "between": 2}

    def __post_init__(self):
        if self.kind not in self._CODES:
            raise ValueError(f"unknown filter kind {self.kind!r}")

    @property
    def code(self) -> int:
        return self._CODES[self.kind]

    def allows(self, u: int, v: int) -> bool:
        if self.kind == "all":
            return True
        iu, iv = (self.side >> u) & 1, (self.side >> v) & 1
        return bool(iu and iv) if self.kind == "within" else iu != iv


ALL_PAIRS = EdgeFilter("all")


def within(vertices: int) -> EdgeFilter:
    return EdgeFilter("within", vertices)


def between(side: int) -> EdgeFilter:
    return EdgeFilter("between", side)


class AugmentationLog:
    """Edges added by :func:`augment`, in insertion order, each stored as ``(u, v)`` with ``u < v``."""

    def __init__(self, us: Iterable[int] = (), vs: Iterable[int] = ()):
        u = np.asarray(list(us) if not isinstance(us, np.ndarray) else us, dtype=np.int32)
        v = np.asarray(list(vs) if not isinstance(vs, np.ndarray) else vs, dtype=np.int32)
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        self.u = np.minimum(u, v)
        self.v = np.maximum(u, v)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "AugmentationLog":
        pairs = [tuple(p) for p in pairs]
        return cls([p[0] for p in pairs], [p[1] for p in pairs])

    def __len__(self) -> int:
        return len(self.u)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return zip(self.u.tolist(), self.v.tolist())

    def __getitem__(self, i: int) -> tuple[int, int]:
        return int(self.u[i]), int(self.v[i])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AugmentationLog):
            return np.array_equal(self.u, other.u) and np.array_equal(self.v, other.v)
        if isinstance(other, (list, tuple)):
            return list(self) == [tuple(p) for p in other]
        return NotImplemented

    def __repr__(self) -> str:
        head = list(self)[:5]
        more = ", ..." if len(self) > 5 else ""
        return f"AugmentationLog({head}{more})"

    def to_json(self) -> str:
        return json.dumps([[int(a), int(b)] for a, b in self])

    @classmethod
    def from_json(cls, text: str) -> "AugmentationLog":
        return cls.from_pairs(json.loads(text))


def _candidate_bound(g: Graph, flt: EdgeFilter) -> int:
    n = g.n
    if flt.kind == "all":
        return n * (n - 1) // 2 - g.num_edges
    side = bitset.to_bool(flt.side, n)
    a = g.matrix
    s = int(side.sum())
    if flt.kind == "within":
        return s * (s - 1) // 2 - int(a[np.ix_(side, side)].sum()) // 2
    return s * (n - s) - int(a[np.ix_(side, ~side)].sum())


def augment(g: Graph, edge_filter: EdgeFilter = ALL_PAIRS) -> tuple[Graph, AugmentationLog]:
    """Close ``g`` under degree-sum >= n augmentation restricted by ``edge_filter``.

    Pairs are scanned in repeated lexicographic sweeps over ``u < v`` with
    current degrees until a sweep adds nothing; the returned log is therefore
    deterministic.
    """
    n = g.n
    bound = _candidate_bound(g, edge_filter)
    if bound == 0:
        return g, AugmentationLog()
    a = g.matrix.astype(np.uint8)
    deg = g.degrees.astype(np.int64)
    side = bitset.to_bool(edge_filter.side, n) if edge_filter.kind != "all" else np.zeros(n, bool)
    out_u = np.empty(bound, dtype=np.int32)
    out_v = np.empty(bound, dtype=np.int32)
    count = kernels.closure_sweep(a, deg, edge_filter.code, side, out_u, out_v)
    if count == 0:
        return g, AugmentationLog()
    log = AugmentationLog(out_u[:count].copy(), out_v[:count].copy())
    return Graph.from_matrix(a.view(bool)), log


def check_log(g: Graph, log: AugmentationLog) -> None:
    """Replay ``log`` on ``g`` and verify each entry was a legal augmentation."""
    rows = list(g.rows)
    n = g.n
    for i, (u, v) in enumerate(log):
        if (rows[u] >> v) & 1:
            raise ContractViolation(f"log entry {i} ({u}, {v}) joins adjacent vertices")
        if rows[u].bit_count() + rows[v].bit_count() < n:
            raise ContractViolation(f"log entry {i} ({u}, {v}) has degree sum below n")
        rows[u] |= 1 << v
        rows[v] |= 1 << u


def edge_times(g: Graph, log: AugmentationLog) -> np.ndarray:
    """``time[a, b]`` = -1 for edges of ``g``, the log index for augmented edges, else int32 max."""
    n = g.n
    time = np.full((n, n), _NEVER, dtype=np.int32)
    time[g.matrix] = -1
    idx = np.arange(len(log), dtype=np.int32)
    time[log.u, log.v] = idx
    time[log.v, log.u] = idx
    return time


def lift_cycle(g: Graph, log: AugmentationLog, cycle: Sequence[int]) -> tuple[int, ...]:
    """Turn a Hamiltonian cycle of ``g`` + ``log`` into one of ``g``.

    Entries are undone newest first. For an entry ``uv`` on the cycle, the
    cycle minus ``uv`` is a path ``u = p1 .. pn = v``; the first ``i`` with
    ``p1 p(i+1)`` and ``pi pn`` both present before the entry was added
    re-closes the path without ``uv``. Entries not on the cycle cost nothing.
    """
    n = g.n
    if len(log) == 0:
        return check_ham_cycle(g, cycle, "lift_cycle input")
    order = np.asarray(cycle, dtype=np.int64)
    if n < 3 or len(order) != n or not np.array_equal(np.sort(order), np.arange(n)):
        raise ContractViolation("lift_cycle input is not a vertex permutation")
    time = edge_times(g, log)
    if (time[order, np.roll(order, -1)] == _NEVER).any():
        raise ContractViolation("lift_cycle input uses an edge absent from the augmented graph")
    lifted, failed = kernels.lift_rotations(order, time)
    if failed:
        raise ContractViolation(f"no re-splice index for log entry {failed - 1}")
    return check_ham_cycle(g, lifted.tolist(), "lifted cycle")
