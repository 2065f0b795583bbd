"""Exponential-time ground truth: Held-Karp, backtracking, inclusion-exclusion
counting, and an exact minimum path cover used as the colour-coding oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bitset, kernels
from .errors import Refusal
from .graph import Graph, check_ham_cycle

HELD_KARP_CAP = 24
HELD_KARP_HARD_CAP = 28
BRUTE_FORCE_CAP = 11
IE_CAP = 28
PATH_COVER_CAP = 20

# primes below 2**31 so residue sums over <= 28 neighbours stay inside int64
_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def held_karp(g: Graph, cap: int = HELD_KARP_CAP) -> tuple[int, ...] | None:
    """Hamiltonian cycle via the bitmask DP, anchored at vertex 0, or ``None``.

    ``ends[mask]`` holds, for each subset of ``1..n-1``, the set of vertices at
    which a path from 0 covering exactly that subset can end; reconstruction
    walks backwards through the table taking the lowest valid predecessor.
    """
    n = g.n
    if n > min(cap, HELD_KARP_HARD_CAP):
        raise Refusal(f"held_karp refuses n={n} above cap {min(cap, HELD_KARP_HARD_CAP)}")
    if n < 3:
        return None
    nb = np.array([g.rows[v] >> 1 for v in range(1, n)], dtype=np.int64)
    nb0 = g.rows[0] >> 1
    ends = kernels.held_karp_table(np.int64(nb0), nb)
    full = (1 << (n - 1)) - 1
    last = int(ends[full]) & nb0
    if not last:
        return None
    v = bitset.lowest(last)
    path = [v]
    mask = full
    while mask & (mask - 1):
        mask ^= 1 << v
        v = bitset.lowest(int(ends[mask]) & int(nb[v]))
        path.append(v)
    cycle = [0] + [p + 1 for p in reversed(path)]
    return check_ham_cycle(g, cycle, "held_karp cycle")


def brute_force(g: Graph, cap: int = BRUTE_FORCE_CAP) -> tuple[int, ...] | None:
    """Exhaustive search over vertex orders starting at 0 (lexicographically first hit)."""
    n = g.n
    if n > cap:
        raise Refusal(f"brute_force refuses n={n} above cap {cap}")
    if n < 3:
        return None
    rows = g.rows
    path = [0]
    used = 1

    def extend(v: int) -> bool:
        nonlocal used
        if len(path) == n:
            return (rows[v] & 1) == 1
        for w in range(1, n):
            if not (used >> w) & 1 and (rows[v] >> w) & 1:
                path.append(w)
                used |= 1 << w
                if extend(w):
                    return True
                path.pop()
                used ^= 1 << w
        return False

    return tuple(path) if extend(0) else None


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        k = ((r - x) * pow(m, -1, p)) % p
        x += m * k
        m *= p
    return x


def ie_count(g: Graph, cap: int = IE_CAP) -> int:
    """Number of undirected Hamiltonian cycles by inclusion-exclusion over closed walks.

    Only a walk-count vector per subset is held, so space is polynomial. Walk
    counts are reduced modulo several primes whose product exceeds (n-1)!, the
    largest possible directed count, and recombined exactly by CRT.
    """
    n = g.n
    if n < 3:
        raise ValueError("ie_count needs n >= 3")
    if n > cap:
        raise Refusal(f"ie_count refuses n={n} above cap {cap}")
    bound = math.factorial(n - 1)
    moduli = []
    prod = 1
    for p in _PRIMES:
        if prod > bound:
            break
        moduli.append(p)
        prod *= p
    if prod <= bound:
        raise OverflowError(f"count for n={n} exceeds the residue range")
    indptr, indices = g.adjacency_lists()
    residues = [int(kernels.ie_signed_walks(indptr, indices, n, p)) for p in moduli]
    directed = _crt(residues, moduli)
    if directed % 2:
        raise ArithmeticError("odd directed cycle count")
    return directed // 2


@dataclass(frozen=True)
class PathCoverResult:
    size: int
    paths: tuple[tuple[int, ...], ...]


def exact_min_path_cover(g: Graph, targets: int, cap: int = PATH_COVER_CAP) -> PathCoverResult:
    """Fewest vertex-disjoint paths of ``G[targets]`` covering ``targets``, with a witness.

    ``best[mask][v]`` is the fewest paths covering ``mask`` whose last path ends
    at ``v``. Reconstruction prefers extending along an edge, then the lowest id.
    """
    tv = bitset.members(targets)
    m = len(tv)
    if m > cap:
        raise Refusal(f"exact_min_path_cover refuses {m} targets above cap {cap}")
    if m == 0:
        return PathCoverResult(0, ())
    index = {v: i for i, v in enumerate(tv)}
    nb = np.zeros(m, dtype=np.int64)
    for i, v in enumerate(tv):
        r = 0
        for w in bitset.members(g.rows[v] & targets):
            r |= 1 << index[w]
        nb[i] = r
    best = kernels.min_path_cover_table(nb)
    full = (1 << m) - 1
    row = best[full]
    v = int(np.argmin(row))
    size = int(row[v])

    paths: list[list[int]] = [[v]]
    mask = full
    while True:
        b = int(best[mask, v])
        sub = mask ^ (1 << v)
        if sub == 0:
            break
        nxt = -1
        cand = int(nb[v]) & sub
        for u in bitset.members(cand):
            if best[sub, u] == b:
                nxt = u
                break
        if nxt >= 0:
            paths[-1].append(nxt)
        else:
            nxt = next(u for u in bitset.members(sub) if best[sub, u] == b - 1)
            paths.append([nxt])
        mask, v = sub, nxt
    out = tuple(tuple(tv[i] for i in reversed(p)) for p in reversed(paths))
    return PathCoverResult(size, out)
