"""Strategy selection shared by the CLI and the benchmark harness."""
from __future__ import annotations

from dataclasses import dataclass

from . import exact, kernelize, mindeg, pathcover
from .errors import Refusal
from .graph import Graph
from .outcome import Exhaustive, Hamiltonian, NonHamiltonian, SolveOutcome

STRATEGIES = ("auto", "kernel", "mindeg", "exact")


@dataclass(frozen=True)
class Measure:
    n: int
    k_count: int
    k_degree: int


def measure(g: Graph) -> Measure:
    return Measure(g.n, kernelize.split_high_low(g).k, mindeg.degree_k(g))


@dataclass(frozen=True)
class Choice:
    strategy: str
    guard: str


def choose(m: Measure, strategy: str = "auto", cap: int = exact.HELD_KARP_CAP,
           force: bool = False) -> Choice:
    """Pick a strategy and name the guard that allowed it; refuse a forced strategy whose guard fails."""
    kernel_ok = 3 * m.k_count <= cap
    mindeg_ok = mindeg.GUARD_RATIO * m.k_degree < m.n
    exact_ok = m.n <= cap
    if strategy == "auto":
        if kernel_ok:
            return Choice("kernel", f"3*k_count={3 * m.k_count} <= {cap}")
        if mindeg_ok:
            return Choice("mindeg", f"{mindeg.GUARD_RATIO}*k_degree={mindeg.GUARD_RATIO * m.k_degree} < n={m.n}")
        if exact_ok or force:
            return Choice("exact", f"n={m.n} <= {cap}" if exact_ok else "forced")
        raise Refusal(f"no strategy applies: k_count={m.k_count}, k_degree={m.k_degree}, n={m.n} > cap {cap}")
    if strategy == "kernel":
        if kernel_ok or force:
            return Choice("kernel", f"3*k_count={3 * m.k_count} <= {cap}" if kernel_ok else "forced")
        raise Refusal(f"kernel strategy needs 3*k_count <= {cap}, got k_count={m.k_count}")
    if strategy == "mindeg":
        if mindeg_ok or force:
            return Choice("mindeg", "k_degree < n/34" if mindeg_ok else "forced")
        raise Refusal(f"mindeg strategy needs k_degree < n/{mindeg.GUARD_RATIO}, got k_degree={m.k_degree}, n={m.n}")
    if strategy == "exact":
        if exact_ok or force:
            return Choice("exact", f"n={m.n} <= {cap}" if exact_ok else "forced")
        raise Refusal(f"exact strategy refuses n={m.n} above cap {cap}")
    raise ValueError(f"unknown strategy {strategy!r}")


def solve_exact(g: Graph, cap: int = exact.HELD_KARP_CAP, force: bool = False) -> SolveOutcome:
    if g.n < 3:
        return NonHamiltonian(Exhaustive("size", g.n, "fewer than 3 vertices"), "exact")
    limit = exact.HELD_KARP_HARD_CAP if force else cap
    cyc = exact.held_karp(g, cap=limit)
    if cyc is None:
        return NonHamiltonian(Exhaustive("held_karp", g.n), "exact")
    return Hamiltonian(cyc, "exact")


def solve(g: Graph, choice: Choice, seed: int = 0, epsilon: float = pathcover.DEFAULT_EPSILON,
          cap: int = exact.HELD_KARP_CAP, force: bool = False, exact_verify: bool = False,
          k: int | None = None) -> SolveOutcome:
    if choice.strategy == "kernel":
        return kernelize.solve_count_relaxed(g, cap=cap, force=force)
    if choice.strategy == "mindeg":
        return mindeg.solve_degree_relaxed(g, seed=seed, epsilon=epsilon, cap=cap, force=force,
                                           exact_verify=exact_verify, k=k,
                                           guard=choice.guard != "forced")
    return solve_exact(g, cap=cap, force=force)
