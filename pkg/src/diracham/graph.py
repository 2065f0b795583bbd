"""Immutable simple undirected graphs with bitset adjacency rows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import bitset
from .errors import ContractViolation


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rows[v]`` is a Python integer whose set bits are the neighbours of ``v``.
    Arbitrary-precision ints give word-parallel intersections and popcounts
    without a fixed word size. The instance is immutable; derived arrays are
    cached and returned read-only.
    """

    __slots__ = ("n", "rows", "_degrees", "_matrix", "_hash")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        self.n = n
        self.rows = tuple(rows)
        self._degrees = None
        self._matrix = None
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any() or not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric with zero diagonal")
        packed = np.packbits(a, axis=1, bitorder="little")
        rows = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
        g = cls(n, rows)
        m = a.copy()
        m.setflags(write=False)
        g._matrix = m
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        allv = bitset.full(n)
        return cls(n, [allv ^ (1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return (self.rows[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            d = np.fromiter((r.bit_count() for r in self.rows), dtype=np.int64, count=self.n)
            d.setflags(write=False)
            self._degrees = d
        return self._degrees

    @property
    def min_degree(self) -> int:
        return int(self.degrees.min()) if self.n else 0

    @property
    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    def neighbors(self, v: int) -> list[int]:
        return bitset.members(self.rows[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in bitset.members(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v

    @property
    def matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix (read-only, cached)."""
        if self._matrix is None:
            n = self.n
            nbytes = (n + 7) // 8
            buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
            raw = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes)
            m = np.unpackbits(raw, axis=1, bitorder="little")[:, :n].astype(bool)
            m.setflags(write=False)
            self._matrix = m
        return self._matrix

    def adjacency_lists(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR arrays ``(indptr, indices)`` with sorted neighbour lists."""
        m = self.matrix
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(m.sum(axis=1), out=indptr[1:])
        indices = np.nonzero(m)[1].astype(np.int64)
        return indptr, indices

    # -- derived graphs --------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph; returns it with ``new id -> old id`` map (sorted)."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in bitset.members(self.rows[v]):
                j = index.get(w)
                if j is not None:
                    r |= 1 << j
            rows.append(r)
        return Graph(len(keep), rows), keep

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def is_ham_cycle(g: Graph, order: Sequence[int]) -> bool:
    n = g.n
    if n < 3 or len(order) != n:
        return False
    if sorted(order) != list(range(n)):
        return False
    return all(g.has_edge(order[i], order[(i + 1) % n]) for i in range(n))


def check_ham_cycle(g: Graph, order: Sequence[int], what: str = "cycle") -> tuple[int, ...]:
    if not is_ham_cycle(g, order):
        raise ContractViolation(f"{what} is not a Hamiltonian cycle of {g!r}: {list(order)[:20]}")
    return tuple(int(v) for v in order)


def canonical_cycle(order: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the smallest id and pick the smaller direction."""
    order = list(order)
    i = order.index(min(order))
    fwd = order[i:] + order[:i]
    bwd = [fwd[0]] + fwd[:0:-1]
    return tuple(min(fwd, bwd))


def cycle_edges(order: Sequence[int]) -> set[tuple[int, int]]:
    n = len(order)
    return {tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)}


@dataclass(frozen=True)
class Connectivity:
    """Result of :func:`is_two_connected`.

    On failure exactly one witness is set: ``cut_vertex`` or ``components``
    (two vertex lists from different connected components). Graphs with fewer
    than three vertices fail with neither witness.
    """

    two_connected: bool
    cut_vertex: int | None = None
    components: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.two_connected

    def to_json(self) -> dict:
        return {
            "two_connected": self.two_connected,
            "cut_vertex": self.cut_vertex,
            "components": [list(c) for c in self.components] if self.components else None,
        }


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bitset.members(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(bitset.members(comp))
    return comps


def is_two_connected(g: Graph) -> Connectivity:
    n = g.n
    if n < 3:
        return Connectivity(False)
    comps = connected_components(g)
    if len(comps) > 1:
        return Connectivity(False, components=(tuple(comps[0]), tuple(comps[1])))
    cut = _find_cut_vertex(g)
    if cut is not None:
        return Connectivity(False, cut_vertex=cut)
    return Connectivity(True)


def _find_cut_vertex(g: Graph) -> int | None:
    """Smallest-discovery articulation point of a connected graph (lowpoint DFS)."""
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    root_children = 0
    disc[0] = low[0] = 0
    counter = 1
    stack = [(0, 0)]
    while stack:
        v, i = stack[-1]
        if i < len(nbrs[v]):
            stack[-1] = (v, i + 1)
            w = nbrs[v][i]
            if disc[w] == -1:
                parent[w] = v
                disc[w] = low[w] = counter
                counter += 1
                if v == 0:
                    root_children += 1
                stack.append((w, 0))
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            p = parent[v]
            if p >= 0:
                low[p] = min(low[p], low[v])
                if p != 0 and low[v] >= disc[p]:
                    return p
    if root_children > 1:
        return 0
    return None
