"""Hamiltonicity for graphs whose minimum degree is at least ceil(n/2) - k.

Pipeline: 2-connectivity, then the Dirac closure when ``delta >= n/2``, then
cycle extension. An independent set ``A1`` of size ``delta + 1`` from the
extension step splits ``V`` into ``A1``, the vertices ``A2`` seeing at least
half of ``A1``, and the rest ``A3``. With ``S`` the smaller of ``A2`` and
``A1 | A3`` and ``T`` its complement, ``G`` is Hamiltonian exactly when
``G[T]`` has a cover by ``|S|`` disjoint paths. A cover is turned into a cycle
through an S-T closure; a failed search becomes a cut certificate.

The sizing and closure guarantees hold for ``8n/17 < delta < n/2``; they are
asserted at runtime and any violation falls back to the exact solver.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import bitset, closure, exact, nashwilliams, pathcover
from .errors import ContractViolation, MalformedCertificate, Refusal
from .graph import Graph, check_ham_cycle, is_two_connected
from .outcome import Exhaustive, Hamiltonian, NonHamiltonian, SolveOutcome

logger = logging.getLogger(__name__)

GUARD_RATIO = 34


def degree_k(g: Graph) -> int:
    """Smallest ``k`` with ``delta >= ceil(n/2) - k``."""
    if g.n == 0:
        return 0
    return max(0, (g.n + 1) // 2 - g.min_degree)


@dataclass(frozen=True)
class HaggkvistPartition:
    A1: int
    A2: int
    A3: int
    delta: int

    @classmethod
    def build(cls, g: Graph, A1: int) -> "HaggkvistPartition":
        delta = g.min_degree
        a2 = 0
        for v in bitset.members(bitset.full(g.n) & ~A1):
            if 2 * (g.rows[v] & A1).bit_count() >= delta:
                a2 |= 1 << v
        return cls(A1, a2, bitset.full(g.n) & ~A1 & ~a2, delta)

    def choose_S(self) -> int:
        rest = self.A1 | self.A3
        return self.A2 if self.A2.bit_count() <= rest.bit_count() else rest

    def validate(self, g: Graph) -> None:
        full = bitset.full(g.n)
        if self.A1 & self.A2 or self.A1 & self.A3 or self.A2 & self.A3 or (self.A1 | self.A2 | self.A3) != full:
            raise ContractViolation("A1, A2, A3 do not partition V")
        if self.A1.bit_count() != self.delta + 1:
            raise ContractViolation("A1 does not have delta + 1 vertices")
        for v in bitset.members(self.A1):
            if g.rows[v] & self.A1:
                raise ContractViolation("A1 is not independent")
        for v in bitset.members(full & ~self.A1):
            high = 2 * (g.rows[v] & self.A1).bit_count() >= self.delta
            if high != bool((self.A2 >> v) & 1):
                raise ContractViolation(f"A2 membership of vertex {v} is wrong")


@dataclass(frozen=True)
class CutCertificate:
    """``G[T]`` admits no cover by ``|S|`` disjoint paths (Monte-Carlo, error <= epsilon)."""

    S: int
    T: int
    deficiency: int
    epsilon: float
    seed: int

    def to_json(self) -> dict:
        return {
            "S": bitset.members(self.S),
            "deficiency": self.deficiency,
            "epsilon": self.epsilon,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "CutCertificate":
        try:
            ids = [int(v) for v in data["S"]]
            s = bitset.from_iter(ids)
            if len(set(ids)) != len(ids) or any(not 0 <= v < n for v in ids):
                raise MalformedCertificate("S lists repeated or out-of-range vertices")
            return cls(s, bitset.full(n) & ~s, int(data["deficiency"]),
                       float(data["epsilon"]), int(data["seed"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedCertificate):
                raise
            raise MalformedCertificate(f"bad cut certificate: {exc}") from exc


@dataclass
class BGraph:
    B: Graph
    B_prime: Graph
    B_closed: Graph
    log: closure.AugmentationLog


def build_b_graphs(g: Graph, S: int, cover: pathcover.PathCover) -> BGraph:
    n = g.n
    T = bitset.full(n) & ~S
    rows = [0] * n
    for v in bitset.members(S):
        rows[v] = g.rows[v] & T
    for v in bitset.members(T):
        rows[v] = g.rows[v] & S
    for p in cover.paths:
        for a, b in zip(p, p[1:]):
            rows[a] |= 1 << b
            rows[b] |= 1 << a
    B = Graph(n, rows)
    prime_rows = list(rows)
    for v in bitset.members(S):
        prime_rows[v] |= S & ~(1 << v)
    B_prime = Graph(n, prime_rows)
    B_closed, log = closure.augment(B_prime, closure.between(S))
    return BGraph(B, B_prime, B_closed, log)


def assemble_cycle(g: Graph, S: int, cover: pathcover.PathCover) -> tuple[int, ...]:
    """Join the ``|S|`` cover paths of ``G[T]`` through ``S`` and lift back into ``g``."""
    T = bitset.full(g.n) & ~S
    svs = bitset.members(S)
    pathcover.check_path_cover(g, cover, T, len(svs))
    bg = build_b_graphs(g, S, cover)
    for s in svs:
        if (bg.B_closed.rows[s] & T) != T:
            raise ContractViolation(f"S-T closure left vertex {s} short of some T vertices")
    order: list[int] = []
    for p, s in zip(cover.paths, svs):
        order.extend(p)
        order.append(s)
    cycle = closure.lift_cycle(bg.B_prime, bg.log, order)
    m = len(cycle)
    for i in range(m):
        a, b = cycle[i], cycle[(i + 1) % m]
        if (S >> a) & 1 and (S >> b) & 1:
            raise ContractViolation(f"lifted cycle uses the S-S edge {a}-{b}")
    return check_ham_cycle(g, cycle, "assembled cycle")


@dataclass(frozen=True)
class VerifyResult:
    supported: bool
    cover: pathcover.PathCover | None = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "supported" if self.supported else "refuted"


def _cover_T(g: Graph, T: int, paths: int, epsilon: float, seed: int,
             exact_verify: bool) -> pathcover.PathCover | None:
    """Cover ``G[T]`` by exactly ``paths`` disjoint paths (ids of ``g``) or ``None``."""
    tv = bitset.members(T)
    if paths >= len(tv):
        return pathcover.PathCover(tuple((v,) for v in tv)) if paths == len(tv) else None
    if exact_verify and len(tv) <= exact.PATH_COVER_CAP:
        best = exact.exact_min_path_cover(g, T)
        if best.size > paths:
            return None
        cover = [list(p) for p in best.paths]
        while len(cover) < paths:
            i = next(j for j, p in enumerate(cover) if len(p) > 1)
            cover.append([cover[i].pop()])
        return pathcover.PathCover(tuple(tuple(p) for p in cover))
    return pathcover.cover_subgraph(g, T, paths, epsilon, seed)


def fresh_seed(seed: int) -> int:
    return int(np.random.SeedSequence([seed, 1]).generate_state(1, np.uint64)[0] >> 1)


def verify_certificate(g: Graph, cert: CutCertificate, seed: int | None = None,
                       exact_verify: bool = False) -> VerifyResult:
    """Search again for a cover of ``G[T]`` by at most ``|S|`` paths.

    A found cover refutes the certificate. Otherwise it is supported, with
    one-sided error at most ``cert.epsilon``.
    """
    full = bitset.full(g.n)
    if cert.S == 0:
        raise MalformedCertificate("S is empty")
    if cert.S & ~full or cert.T != full & ~cert.S:
        raise MalformedCertificate("S and T do not partition the vertex set")
    s, t_size = cert.S.bit_count(), cert.T.bit_count()
    if t_size <= s:
        return VerifyResult(False, pathcover.PathCover(tuple((v,) for v in bitset.members(cert.T))),
                            "T has no more vertices than S")
    if cert.deficiency != t_size - s:
        raise MalformedCertificate(f"deficiency {cert.deficiency} != |T| - |S| = {t_size - s}")
    seed = fresh_seed(cert.seed) if seed is None else seed
    cover = _cover_T(g, cert.T, s, cert.epsilon, seed, exact_verify)
    if cover is None:
        return VerifyResult(True, None, f"no cover by {s} paths found")
    pathcover.check_path_cover(g, cover, cert.T, s)
    return VerifyResult(False, cover, "cover found")


def _exact_fallback(g: Graph, cap: int, force: bool, info: dict, reason: str) -> SolveOutcome:
    limit = exact.HELD_KARP_HARD_CAP if force else cap
    if g.n > limit:
        raise Refusal(f"{reason}; exact fallback refuses n={g.n} above cap {limit}")
    info = info | {"branch": "exact", "fallback": reason}
    cyc = exact.held_karp(g, cap=limit)
    if cyc is None:
        return NonHamiltonian(Exhaustive("held_karp", g.n), "mindeg", info)
    return Hamiltonian(cyc, "mindeg", info)


def _theory_failure(g: Graph, cap: int, force: bool, info: dict, reason: str) -> SolveOutcome:
    logger.warning("runtime check failed: %s", reason)
    limit = exact.HELD_KARP_HARD_CAP if force else cap
    if g.n > limit:
        raise ContractViolation(f"{reason}; graph too large (n={g.n}) for the exact fallback")
    return _exact_fallback(g, cap, force, info, reason)


def solve_degree_relaxed(g: Graph, seed: int = 0, epsilon: float = pathcover.DEFAULT_EPSILON,
                         cap: int = exact.HELD_KARP_CAP, force: bool = False,
                         exact_verify: bool = False, k: int | None = None,
                         guard: bool = True) -> SolveOutcome:
    """Decide Hamiltonicity of ``g``; see the module docstring for the stages.

    ``guard=False`` runs the partition stage even when ``34k >= n``; its runtime
    checks then decide whether the result stands or the exact solver takes over.
    """
    n = g.n
    measured = degree_k(g)
    if k is not None and k < measured:
        raise Refusal(f"requested k={k} is below the measured k={measured}")
    info: dict[str, Any] = {"k_degree": measured, "seed": seed, "epsilon": epsilon}
    if n < 3:
        return NonHamiltonian(Exhaustive("size", n, "fewer than 3 vertices"), "mindeg", info)
    conn = is_two_connected(g)
    if not conn.two_connected:
        return NonHamiltonian(conn, "mindeg", info | {"branch": "not-2-connected"})
    delta = g.min_degree
    if 2 * delta >= n:
        closed, log = closure.augment(g, closure.ALL_PAIRS)
        if closed.num_edges != n * (n - 1) // 2:
            raise ContractViolation("closure of a Dirac graph is not complete")
        cycle = closure.lift_cycle(g, log, list(range(n)))
        return Hamiltonian(cycle, "mindeg", info | {"branch": "dirac"})
    if guard and GUARD_RATIO * measured >= n:
        return _exact_fallback(g, cap, force, info, f"k={measured} is not below n/{GUARD_RATIO}")
    if 3 * delta < n + 2:
        return _exact_fallback(g, cap, force, info, "minimum degree below (n+2)/3")

    found = nashwilliams.find_cycle_or_indepset(g)
    if not isinstance(found, nashwilliams.IndepSet):
        return Hamiltonian(found, "mindeg", info | {"branch": "extension"})
    part = HaggkvistPartition.build(g, found.vertices)
    part.validate(g)
    S = part.choose_S()
    T = bitset.full(n) & ~S
    s_size, t_size = S.bit_count(), T.bit_count()
    t = t_size - s_size
    info |= {"branch": "partition", "S_size": s_size, "deficiency": t}
    if s_size < 3 * delta - n + 2:
        return _theory_failure(g, cap, force, info, f"|S|={s_size} below 3*delta-n+2={3 * delta - n + 2}")
    if t > 6 * max(measured, 0) or t < 0:
        return _theory_failure(g, cap, force, info, f"deficiency {t} outside [0, 6k={6 * measured}]")

    cover = _cover_T(g, T, s_size, epsilon, seed, exact_verify)
    if cover is None:
        return NonHamiltonian(CutCertificate(S, T, t, epsilon, seed), "mindeg", info)
    try:
        cycle = assemble_cycle(g, S, cover)
    except ContractViolation as exc:
        return _theory_failure(g, cap, force, info, f"cycle assembly failed: {exc}")
    return Hamiltonian(cycle, "mindeg", info)

