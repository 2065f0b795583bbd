"""Grow a cycle until it is Hamiltonian or an independent set of size delta+1 shows up.

For a 2-connected graph with ``3*delta >= n + 2`` every step either splices
more vertices into the current cycle or stops with an independent set. If the
vertices off the cycle are independent, one of them is spliced in directly or
its successors on the cycle form the independent set. Otherwise a path leaving
the cycle at ``x1`` and re-entering at ``x_{t+1}`` is found, and the neighbour
counts of ``x_t``, ``x_k`` and the second path vertex ``p2`` force one of
three pigeonhole patterns, each giving a longer cycle.

Labels below are 1-based on the cycle as in ``x1 .. xk``; ``p1 .. pm`` is the
interior of the escape path.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Union

from . import bitset
from .errors import ContractViolation, PreconditionError
from .graph import Graph, check_ham_cycle, is_two_connected

logger = logging.getLogger(__name__)


@dataclass
class CycleState:
    cycle: list[int]

    @property
    def members(self) -> int:
        return bitset.from_iter(self.cycle)

    def __len__(self) -> int:
        return len(self.cycle)

    def validate(self, g: Graph) -> None:
        c = self.cycle
        if len(c) < 3 or len(set(c)) != len(c):
            raise ContractViolation(f"cycle state is not a simple cycle: {c}")
        for a, b in zip(c, c[1:] + c[:1]):
            if not g.has_edge(a, b):
                raise ContractViolation(f"cycle step {a}-{b} is not an edge")


@dataclass(frozen=True)
class EscapePath:
    """``path = (x1, p1, .., pm, x_{t+1})`` with interior off the cycle."""

    path: tuple[int, ...]
    t: int

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]

    def validate(self, g: Graph, labels: list[int]) -> None:
        p = self.path
        k = len(labels)
        if len(p) < 4:
            raise ContractViolation("escape path needs at least 3 edges")
        if not 1 <= self.t < k or p[0] != labels[0] or p[-1] != labels[self.t]:
            raise ContractViolation("escape path endpoints do not match x1 and x_{t+1}")
        on_cycle = bitset.from_iter(labels)
        inner = self.interior
        if len(set(inner)) != len(inner) or any((on_cycle >> q) & 1 for q in inner):
            raise ContractViolation("escape path interior meets the cycle or repeats")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise ContractViolation(f"escape path step {a}-{b} is not an edge")


@dataclass(frozen=True)
class DegreeTriple:
    """Neighbour counts of ``(x_t, x_k, p2)`` among ``x1..x_t``, ``x_{t+1}..x_k`` and off the cycle."""

    d_up: tuple[int, int, int]
    d_down: tuple[int, int, int]
    d_out: tuple[int, int, int]

    def holding(self, n: int, k: int, t: int) -> list[int]:
        """Which of the three inequalities hold (1-based)."""
        out = []
        if sum(self.d_up) > t + 1:
            out.append(1)
        if sum(self.d_down) > k - t + 1:
            out.append(2)
        if sum(self.d_out) > n - k - 1:
            out.append(3)
        return out


@dataclass(frozen=True)
class Extended:
    state: CycleState
    rule: str


@dataclass(frozen=True)
class IndepSet:
    vertices: int

    def members(self) -> list[int]:
        return bitset.members(self.vertices)


@dataclass(frozen=True)
class Done:
    cycle: tuple[int, ...]


StepResult = Union[Extended, IndepSet, Done]


def check_preconditions(g: Graph) -> None:
    n = g.n
    if n < 3:
        raise PreconditionError(f"needs n >= 3, got n={n}")
    delta = g.min_degree
    if 3 * delta < n + 2:
        raise PreconditionError(f"minimum degree {delta} is below (n+2)/3 for n={n}")
    if not is_two_connected(g).two_connected:
        raise PreconditionError("graph is not 2-connected")


def initial_cycle(g: Graph) -> CycleState:
    """Close the first non-tree edge met by a BFS from vertex 0 through the tree."""
    parent = {0: -1}
    depth = {0: 0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in g.neighbors(a):
            if b not in parent:
                parent[b] = a
                depth[b] = depth[a] + 1
                queue.append(b)
            elif b != parent[a]:
                left, right = [a], [b]
                while left[-1] != right[-1]:
                    if depth[left[-1]] >= depth[right[-1]]:
                        left.append(parent[left[-1]])
                    else:
                        right.append(parent[right[-1]])
                state = CycleState(left + right[-2::-1])
                state.validate(g)
                return state
    raise PreconditionError("graph is acyclic")


def _bfs_path(g: Graph, start: int, allowed: int, targets: int) -> list[int] | None:
    """Shortest path ``start .. target`` whose interior stays in ``allowed`` (lowest ids first)."""
    parent = {start: -1}
    seen = 1 << start
    queue = deque([start])
    rows = g.rows
    while queue:
        a = queue.popleft()
        hit = rows[a] & targets
        if hit:
            path = [bitset.lowest(hit)]
            while a != -1:
                path.append(a)
                a = parent[a]
            return path[::-1]
        for b in bitset.members(rows[a] & allowed & ~seen):
            parent[b] = a
            queue.append(b)
        seen |= rows[a] & allowed
    return None


def _rotate(cycle: list[int], start: int) -> list[int]:
    i = cycle.index(start)
    return cycle[i:] + cycle[:i]


def find_escape_path(g: Graph, state: CycleState) -> EscapePath:
    """A path leaving the cycle and returning to it, of length >= 3.

    Take the lowest off-cycle ``v`` with neighbours both on and off the cycle,
    ``u`` its lowest cycle neighbour and ``w`` its lowest off-cycle neighbour.
    Either ``w`` reaches the cycle away from ``u`` without using ``u`` or
    ``v``, or 2-connectivity supplies ``R`` (from ``v`` to the cycle avoiding
    ``u``) and ``Q`` (from ``w`` to ``u`` avoiding ``v``), which are then
    disjoint and combine into ``u, Q reversed, v, R``.
    """
    on = state.members
    off = bitset.full(g.n) & ~on
    rows = g.rows
    for v in bitset.members(off):
        if rows[v] & on and rows[v] & off:
            break
    else:
        raise PreconditionError("vertices off the cycle are independent")
    u = bitset.lowest(rows[v] & on)
    w = bitset.lowest(rows[v] & off)
    rest = on & ~(1 << u)
    tail = _bfs_path(g, w, off & ~(1 << v), rest)
    if tail is not None:
        path = [u, v] + tail
    else:
        r = _bfs_path(g, v, off, rest)
        q = _bfs_path(g, w, off & ~(1 << v), 1 << u)
        if r is None or q is None:
            raise ContractViolation("escape path construction failed; graph not 2-connected?")
        if set(r) & set(q[:-1]):
            raise ContractViolation("escape sub-paths R and Q intersect")
        path = q[::-1] + r
    labels = _rotate(state.cycle, u)
    esc = EscapePath(tuple(path), labels.index(path[-1]))
    esc.validate(g, labels)
    return esc


def degree_triple(g: Graph, labels: list[int], t: int, p2: int) -> DegreeTriple:
    up = bitset.from_iter(labels[:t])
    down = bitset.from_iter(labels[t:])
    off = bitset.full(g.n) & ~(up | down)
    who = (labels[t - 1], labels[-1], p2)
    rows = g.rows
    return DegreeTriple(
        tuple((rows[a] & up).bit_count() for a in who),
        tuple((rows[a] & down).bit_count() for a in who),
        tuple((rows[a] & off).bit_count() for a in who),
    )


def _shorten(g: Graph, labels: list[int], esc: EscapePath) -> EscapePath:
    """Re-choose ``t`` so that ``p2`` has no neighbour among ``x2..x_t``."""
    p2 = esc.path[2]
    for i in range(2, esc.t + 1):
        if g.has_edge(p2, labels[i - 1]):
            return EscapePath((esc.path[0], esc.path[1], p2, labels[i - 1]), i - 1)
    return esc


def _splice(g: Graph, labels: list[int], esc: EscapePath, ineq: int):
    """Longer cycle from the patterns of one inequality, or ``None``."""
    k = len(labels)
    t = esc.t
    inner = list(esc.interior)
    p1, p2 = inner[0], inner[1]
    adj = g.has_edge

    def X(i):
        return labels[i - 1]

    def seg(a, b):  # x_a .. x_b ascending
        return labels[a - 1:b] if a <= b else []

    def desc(a, b):  # x_a .. x_b descending
        return labels[b - 1:a][::-1] if a >= b else []

    xt, xk = X(t), X(k)
    if ineq == 1:
        for i in range(1, t):
            if adj(xt, X(i)) and adj(xk, X(i + 1)):
                return "up", [X(1)] + inner + seg(t + 1, k) + seg(i + 1, t) + desc(i, 2)
        return None
    if ineq == 2:
        for i in range(t + 1, k):
            if adj(xk, X(i)) and adj(xt, X(i + 1)):
                return "down-a", [X(1)] + inner + seg(t + 1, i) + desc(k, i + 1) + desc(t, 2)
        for i in range(t + 1, k):
            if adj(xt, X(i)) and adj(p2, X(i + 1)):
                return "down-b", seg(1, t) + desc(i, t + 1) + inner[:0:-1] + seg(i + 1, k)
        for i in range(t + 1, k - 1):
            if adj(xk, X(i)) and adj(p2, X(i + 2)):
                return "down-c", [X(1), p1, p2] + seg(i + 2, k) + desc(i, t + 1) + desc(t, 2)
        if adj(xk, xt):
            return "down-d", [X(1)] + inner + seg(t + 1, k) + desc(t, 2)
        if adj(p2, xk):
            return "down-d", [X(1), p1, p2] + desc(k, 2)
        return None
    for j, pj in enumerate(inner, 1):
        if adj(xk, pj):
            return "out-a", seg(1, k) + inner[:j][::-1]
    for j, pj in enumerate(inner, 1):
        if adj(xt, pj):
            return "out-a", seg(1, t) + inner[j - 1:] + seg(t + 1, k)
    free = bitset.full(g.n) & ~bitset.from_iter(labels) & ~bitset.from_iter(inner)
    rows = g.rows
    common = rows[xt] & rows[xk] & free
    if common:
        w = bitset.lowest(common)
        return "out-b", [X(1)] + inner + seg(t + 1, k) + [w] + desc(t, 2)
    common = rows[xk] & rows[p2] & free
    if common:
        w = bitset.lowest(common)
        return "out-b", seg(1, k) + [w, p2, p1]
    common = rows[xt] & rows[p2] & free
    if common:
        w = bitset.lowest(common)
        return "out-b", seg(1, t) + [w] + inner[1:] + seg(t + 1, k)
    return None


def _extend_independent(g: Graph, state: CycleState, off: int, delta: int) -> StepResult:
    """Off-cycle vertices are independent: splice the lowest one in or return its successors."""
    v = bitset.lowest(off)
    c = state.cycle
    k = len(c)
    nv = g.rows[v]
    for i in range(k):
        a, b = c[i], c[(i + 1) % k]
        if (nv >> a) & 1 and (nv >> b) & 1:
            return Extended(CycleState(c[: i + 1] + [v] + c[i + 1:]), "insert")
    nbr_pos = [i for i in range(k) if (nv >> c[i]) & 1]
    for a_idx, i in enumerate(nbr_pos):
        for j in nbr_pos[a_idx + 1:]:
            if g.has_edge(c[(i + 1) % k], c[(j + 1) % k]):
                lab = c[i:] + c[:i]  # x_i first
                jj = j - i
                new = [lab[0], v] + lab[jj:0:-1] + lab[jj + 1:]
                return Extended(CycleState(new), "successor-edge")
    succ = sorted(c[(i + 1) % k] for i in nbr_pos)
    if len(succ) < delta:
        raise ContractViolation(f"vertex {v} has {len(succ)} < delta cycle neighbours")
    found = (1 << v) | bitset.from_iter(succ[:delta])
    return IndepSet(found)


def extend_step(g: Graph, state: CycleState, delta: int | None = None) -> StepResult:
    """One extension step (see module docstring)."""
    n = g.n
    if delta is None:
        delta = g.min_degree
    k = len(state)
    if k == n:
        return Done(tuple(state.cycle))
    on = state.members
    off = bitset.full(n) & ~on
    if not any(g.rows[v] & off for v in bitset.members(off)):
        res = _extend_independent(g, state, off, delta)
    else:
        esc = find_escape_path(g, state)
        labels = _rotate(state.cycle, esc.path[0])
        esc = _shorten(g, labels, esc)
        esc.validate(g, labels)
        triple = degree_triple(g, labels, esc.t, esc.path[2])
        holds = triple.holding(n, k, esc.t)
        if 3 * delta >= n + 2 and not holds:
            raise ContractViolation(f"none of the three degree inequalities holds: {triple}")
        res = None
        for ineq in holds or (1, 2, 3):
            hit = _splice(g, labels, esc, ineq)
            if hit is not None:
                res = Extended(CycleState(hit[1]), hit[0])
                break
            if 3 * delta >= n + 2:
                raise ContractViolation(f"inequality ({ineq}) holds but no splice pattern fits: {triple}")
        if res is None:
            raise ContractViolation("no extension pattern applies")
    if isinstance(res, Extended):
        res.state.validate(g)
        if len(res.state) <= k:
            raise ContractViolation("extension did not grow the cycle")
    else:
        _check_indep(g, res.vertices, delta)
    return res


def _check_indep(g: Graph, vertices: int, delta: int) -> None:
    if vertices.bit_count() != delta + 1:
        raise ContractViolation(f"independent set has {vertices.bit_count()} vertices, want {delta + 1}")
    for v in bitset.members(vertices):
        if g.rows[v] & vertices:
            raise ContractViolation(f"vertex {v} has a neighbour inside the independent set")


def find_cycle_or_indepset(g: Graph, start: CycleState | None = None) -> tuple[int, ...] | IndepSet:
    """A Hamiltonian cycle, or an independent set of exactly ``delta + 1`` vertices."""
    check_preconditions(g)
    delta = g.min_degree
    state = start if start is not None else initial_cycle(g)
    state.validate(g)
    for _ in range(g.n + 1):
        res = extend_step(g, state, delta)
        if isinstance(res, Done):
            return check_ham_cycle(g, res.cycle, "extension result")
        if isinstance(res, IndepSet):
            return res
        logger.debug("extended %d -> %d by %s", len(state), len(res.state), res.rule)
        state = res.state
    raise ContractViolation("extension loop did not terminate within n steps")
