"""Linear-vertex kernel for graphs where all but ``k`` vertices have degree >= n/2.

Once the high-degree part ``C`` is completed to a clique, a maximum matching
between ``C`` and two copies of each low-degree vertex picks at most ``2|S|``
clique vertices worth keeping. The rest of the clique can always be threaded
back into a cycle of the reduced graph.
"""
from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass

from . import bitset, closure, exact
from .errors import ContractViolation, PreconditionError, Refusal
from .graph import Graph, check_ham_cycle
from .outcome import Exhaustive, Hamiltonian, NonHamiltonian, SolveOutcome

logger = logging.getLogger(__name__)

KERNEL_CAP = exact.HELD_KARP_CAP

SPrime = tuple[int, int]  # (low-degree vertex, copy index 1 or 2)


@dataclass(frozen=True)
class HighLowSplit:
    C: int
    S: int

    @property
    def k(self) -> int:
        return self.S.bit_count()


@dataclass(frozen=True)
class KernelResult:
    graph: Graph
    vertex_map: tuple[int, ...]
    C: int
    S: int
    C_prime: int
    C_star: int
    matching: tuple[tuple[int, SPrime], ...]
    R_C: int
    R_Sprime: frozenset[SPrime]
    identity: bool

    def sidecar(self) -> dict:
        return {
            "vertex_map": list(self.vertex_map),
            "C_prime": bitset.members(self.C_prime),
            "matching": [[c, s, copy] for c, (s, copy) in self.matching],
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2)

    def to_json(self) -> dict:
        d = {"type": "kernel", "kernel_n": self.graph.n, "identity": self.identity}
        d.update(self.sidecar())
        return d


def split_high_low(g: Graph) -> HighLowSplit:
    high = bitset.from_bool(2 * g.degrees >= g.n) if g.n else 0
    return HighLowSplit(C=high, S=bitset.full(g.n) & ~high)


def _max_matching(g: Graph, C: int, svs: list[int]):
    """BFS augmenting paths from each copy in S' (lowest ids first).

    Returns ``mate_c`` (C vertex -> S' index) and ``mate_s`` (S' index -> C vertex or -1).
    """
    right = [g.rows[s] & C for s in svs for _ in (1, 2)]
    mate_s = [-1] * len(right)
    mate_c: dict[int, int] = {}
    free = C
    for root in range(len(right)):
        parent = {root: -1}  # S' index -> C vertex used to reach it
        via: dict[int, int] = {}
        seen = 0
        queue = deque([root])
        end = -1
        while queue and end < 0:
            r = queue.popleft()
            cand = right[r] & ~seen
            hit = cand & free
            if hit:
                end = bitset.lowest(hit)
                via[end] = r
                break
            seen |= cand
            for c in bitset.members(cand):
                nxt = mate_c[c]
                if nxt not in parent:
                    parent[nxt] = c
                    via[c] = r
                    queue.append(nxt)
        if end < 0:
            continue
        c = end
        free &= ~(1 << c)
        while True:
            r = via[c]
            prev = parent[r]
            mate_s[r] = c
            mate_c[c] = r
            if prev == -1:
                break
            c = prev
    return mate_c, mate_s, right


def _alternating_reach(C: int, right: list[int], mate_s: list[int], unsat: int):
    rc = unsat
    rs: set[int] = set()
    frontier = unsat
    while frontier:
        new_c = 0
        for j, nb in enumerate(right):
            if j in rs:
                continue
            blocked = (1 << mate_s[j]) if mate_s[j] >= 0 else 0
            if nb & frontier & ~blocked:
                rs.add(j)
                if mate_s[j] < 0:
                    raise ContractViolation("augmenting path found; matching not maximum")
                new_c |= 1 << mate_s[j]
        frontier = new_c & ~rc
        rc |= frontier
    return rc, rs


def kernelize(g: Graph, split: HighLowSplit) -> KernelResult:
    """Reduce ``g`` (with ``G[C]`` a clique) to an induced subgraph on <= 3|S| vertices."""
    C, S = split.C, split.S
    if S == 0:
        raise PreconditionError("kernelize needs a nonempty low-degree set S")
    k = S.bit_count()
    c_count = C.bit_count()
    if c_count > 2 * k:
        svs = bitset.members(S)
        mate_c, mate_s, right = _max_matching(g, C, svs)
        c_star = 0
        for c in mate_c:
            c_star |= 1 << c
        c_prime = c_star
        spare = C & ~c_star
        while c_prime.bit_count() < k + 1:
            low = spare & -spare
            c_prime |= low
            spare ^= low
        r_c, rs = _alternating_reach(C, right, mate_s, C & ~c_star)
        sprime = lambda j: (svs[j // 2], j % 2 + 1)  # noqa: E731
        matching = tuple(sorted((c, sprime(j)) for j, c in enumerate(mate_s) if c >= 0))
        r_sprime = frozenset(sprime(j) for j in rs)
        keep = c_prime | S
        identity = False
    else:
        c_star = c_prime = C
        matching, r_c, r_sprime = (), 0, frozenset()
        keep = bitset.full(g.n)
        identity = True
    if identity:
        sub, vmap = g, list(range(g.n))
    else:
        sub, vmap = g.induced(bitset.members(keep))
    if sub.n > 3 * k:
        raise ContractViolation(f"kernel has {sub.n} > 3|S| = {3 * k} vertices")
    return KernelResult(sub, tuple(vmap), C, S, c_prime, c_star, matching, r_c, r_sprime, identity)


def check_matching_properties(g: Graph, res: KernelResult) -> None:
    """Verify the matching and the alternating-reachability structure of ``res``."""
    if res.identity:
        return
    C = res.C
    nh = {}
    for s in bitset.members(res.S):
        nh[(s, 1)] = nh[(s, 2)] = g.rows[s] & C
    mate = {}
    used_c = set()
    for c, sp in res.matching:
        if not (nh[sp] >> c) & 1:
            raise ContractViolation(f"matching edge {c}-{sp} not in H")
        if c in used_c or sp in mate:
            raise ContractViolation("matching edges share an endpoint")
        used_c.add(c)
        mate[sp] = c
    for sp in res.R_Sprime:
        if sp not in mate or not (res.R_C >> mate[sp]) & 1:
            raise ContractViolation(f"{sp} in R_S' is not matched into R_C")
    for x in bitset.members(res.R_C):
        for sp, nb in nh.items():
            if (nb >> x) & 1 and sp not in res.R_Sprime:
                raise ContractViolation(f"H-neighbour {sp} of {x} in R_C is not in R_S'")
    for s in bitset.members(res.S):
        if ((s, 1) in res.R_Sprime) != ((s, 2) in res.R_Sprime):
            raise ContractViolation(f"copies of {s} disagree on reachability")
    for sp, nb in nh.items():
        if sp in res.R_Sprime:
            continue
        if nb & res.R_C:
            raise ContractViolation(f"{sp} outside R_S' has a neighbour in R_C")
        if nb & ~res.C_star:
            raise ContractViolation(f"{sp} outside R_S' has an unsaturated neighbour")


def lift_kernel_cycle(g: Graph, res: KernelResult, cycle) -> tuple[int, ...]:
    """Map a kernel cycle to ``g`` and thread ``C \\ C'`` between two consecutive C' vertices."""
    mapped = [res.vertex_map[v] for v in cycle]
    rest = bitset.members(res.C & ~res.C_prime)
    if res.identity or not rest:
        return check_ham_cycle(g, mapped, "lifted kernel cycle")
    m = len(mapped)
    cp = res.C_prime
    for i in range(m):
        x, y = mapped[i], mapped[(i + 1) % m]
        if (cp >> x) & 1 and (cp >> y) & 1:
            out = mapped[: i + 1] + rest + mapped[i + 1:]
            return check_ham_cycle(g, out, "lifted kernel cycle")
    raise ContractViolation("no two consecutive C' vertices on the kernel cycle")


def solve_count_relaxed(g: Graph, cap: int = KERNEL_CAP, force: bool = False,
                        debug: bool = False) -> SolveOutcome:
    """Closure on the high-degree part, kernel, Held-Karp on the kernel, then lift back."""
    n = g.n
    if n < 3:
        return NonHamiltonian(Exhaustive("size", n, "fewer than 3 vertices"), "kernel")
    split = split_high_low(g)
    info = {"k_count": split.k}
    if split.S == 0:
        closed, log = closure.augment(g, closure.ALL_PAIRS)
        if closed.num_edges != n * (n - 1) // 2:
            raise ContractViolation("closure of a Dirac graph is not complete")
        cycle = closure.lift_cycle(g, log, list(range(n)))
        return Hamiltonian(cycle, "kernel", info | {"branch": "dirac", "log_length": len(log)})
    closed, log = closure.augment(g, closure.within(split.C))
    res = kernelize(closed, split)
    if debug:
        check_matching_properties(closed, res)
    info |= {"kernel_n": res.graph.n, "log_length": len(log)}
    limit = exact.HELD_KARP_HARD_CAP if force else cap
    if res.graph.n > limit:
        raise Refusal(
            f"kernel has {res.graph.n} vertices, above the Held-Karp cap {limit}; "
            "use --force or another strategy"
        )
    kc = exact.held_karp(res.graph, cap=limit)
    if kc is None:
        return NonHamiltonian(res, "kernel", info)
    in_closed = lift_kernel_cycle(closed, res, kc)
    cycle = closure.lift_cycle(g, log, in_closed)
    return Hamiltonian(cycle, "kernel", info)
