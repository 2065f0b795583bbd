"""Serialise and independently re-check the certificates behind negative answers."""
from __future__ import annotations

from typing import Any

from . import bitset, closure, exact, kernelize, mindeg
from .errors import MalformedCertificate
from .graph import Connectivity, Graph, connected_components
from .outcome import Exhaustive


def to_json(cert: Any) -> dict:
    if isinstance(cert, mindeg.CutCertificate):
        return {"type": "cut"} | cert.to_json()
    if isinstance(cert, Connectivity):
        return {"type": "not-2-connected"} | cert.to_json()
    if isinstance(cert, (Exhaustive, kernelize.KernelResult)):
        return cert.to_json()
    raise TypeError(f"unknown certificate type {type(cert).__name__}")


def from_json(data: dict, g: Graph) -> Any:
    if not isinstance(data, dict):
        raise MalformedCertificate(f"certificate must be a JSON object, not {type(data).__name__}")
    kind = data.get("type", "cut")
    try:
        if kind == "cut":
            return mindeg.CutCertificate.from_json(data, g.n)
        if kind == "not-2-connected":
            comps = data.get("components")
            return Connectivity(False, data.get("cut_vertex"),
                                tuple(tuple(c) for c in comps) if comps else None)
        if kind == "exhaustive":
            return Exhaustive(data["method"], int(data["n"]), data.get("detail", ""))
        if kind == "kernel":
            return kind
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"bad {kind} certificate: {exc}") from exc
    raise MalformedCertificate(f"unknown certificate type {kind!r}")


def _reachable(g: Graph, start: int, removed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bitset.members(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen & ~removed
        seen |= nxt
        frontier = nxt
    return seen


def _recheck_exhaustive(g: Graph) -> bool:
    """True when a second exact method also finds no Hamiltonian cycle."""
    if g.n < 3:
        return True
    if g.n <= exact.BRUTE_FORCE_CAP:
        return exact.brute_force(g) is None
    if g.n <= 20:
        return exact.ie_count(g) == 0
    return exact.held_karp(g, cap=exact.HELD_KARP_HARD_CAP) is None


def verify(g: Graph, cert: Any, seed: int | None = None, exact_verify: bool = False) -> mindeg.VerifyResult:
    """Re-derive the negative answer a certificate claims, by a route other than the one that produced it."""
    if isinstance(cert, mindeg.CutCertificate):
        return mindeg.verify_certificate(g, cert, seed=seed, exact_verify=exact_verify)
    if isinstance(cert, Connectivity):
        if cert.two_connected:
            raise MalformedCertificate("witness claims the graph is 2-connected")
        if g.n < 3:
            return mindeg.VerifyResult(True, None, "fewer than 3 vertices")
        if cert.cut_vertex is not None:
            v = cert.cut_vertex
            if not 0 <= v < g.n:
                raise MalformedCertificate("cut vertex out of range")
            start = 0 if v != 0 else 1
            ok = _reachable(g, start, 1 << v) | (1 << v) != bitset.full(g.n)
            return mindeg.VerifyResult(ok, None, f"removing {v} {'disconnects' if ok else 'keeps connected'}")
        if cert.components:
            a, b = cert.components[0][0], cert.components[1][0]
            ok = not (_reachable(g, a, 0) >> b) & 1
            return mindeg.VerifyResult(ok, None, "components separated" if ok else "components joined")
        ok = len(connected_components(g)) > 1
        return mindeg.VerifyResult(ok, None, "")
    if isinstance(cert, Exhaustive):
        if cert.n != g.n:
            raise MalformedCertificate("certificate is for a different vertex count")
        ok = _recheck_exhaustive(g)
        return mindeg.VerifyResult(ok, None, "second exact method agrees" if ok else "a cycle exists")
    if isinstance(cert, kernelize.KernelResult) or cert == "kernel":
        split = kernelize.split_high_low(g)
        if split.S == 0:
            return mindeg.VerifyResult(False, None, "graph meets the Dirac bound")
        closed, _ = closure.augment(g, closure.within(split.C))
        res = kernelize.kernelize(closed, split)
        kernelize.check_matching_properties(closed, res)
        if isinstance(cert, kernelize.KernelResult) and res.vertex_map != cert.vertex_map:
            return mindeg.VerifyResult(False, None, "kernel vertex map does not reproduce")
        ok = _recheck_exhaustive(res.graph)
        return mindeg.VerifyResult(ok, None, "kernel has no Hamiltonian cycle" if ok else "kernel is Hamiltonian")
    raise MalformedCertificate(f"unknown certificate {cert!r}")
