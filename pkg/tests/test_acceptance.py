"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line
in the terminal summary (see conftest.py).

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import random
import time

import networkx as nx
import numpy as np
import pytest

from diracham import bitset, certify, closure, exact, kernelize, mindeg, nashwilliams as nw
from diracham import pathcover as pc
from diracham.generators import InstanceSpec, generate
from diracham.graph import Graph, is_ham_cycle, is_two_connected
from diracham.outcome import Exhaustive
from conftest import from_nx, gnp
from test_mindeg import near_bipartite, two_cliques

pytestmark = pytest.mark.slow


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    def check(self):
        assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def wheel_type(h, m, seed):
    """A clique of ``h`` hub vertices joined to every vertex of an ``m``-cycle."""
    rng = random.Random(seed)
    n = h + m
    edges = [(i, j) for i in range(h) for j in range(i + 1, n)]
    edges += [(h + i, h + (i + 1) % m) for i in range(m)]
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


@pytest.mark.criterion(1, "kernel has at most 3k vertices")
def test_kernel_size_bound(record_property):
    budget = Budget(60)
    rng = np.random.default_rng(101)
    worst = 0.0
    for i in range(1000):
        n = int(np.exp(rng.uniform(np.log(12), np.log(2000))))
        k = int(rng.integers(0, min(10, n // 2) + 1))
        g = generate(InstanceSpec("count-relaxed", n, k, i)).graph
        split = kernelize.split_high_low(g)
        if split.S == 0:
            continue
        closed, _ = closure.augment(g, closure.within(split.C))
        res = kernelize.kernelize(closed, split)
        assert res.graph.n <= 3 * split.k, (i, n, split.k, res.graph.n)
        worst = max(worst, res.graph.n / split.k)
    record_property("detail", f"max |kernel|/k = {worst:.2f}, {budget.elapsed:.1f}s")
    budget.check()


@pytest.mark.criterion(2, "kernel preserves Hamiltonicity")
def test_kernel_equivalence(record_property):
    budget = Budget(120)
    rng = np.random.default_rng(202)
    done = ham = 0
    i = 0
    while done < 500:
        i += 1
        n = int(rng.integers(4, 17))
        if i % 2:
            g = generate(InstanceSpec("count-relaxed", n, int(rng.integers(1, n // 2 + 1)), i)).graph
        else:
            g = gnp(n, float(rng.uniform(0.3, 0.8)), i)
        split = kernelize.split_high_low(g)
        if split.S == 0:
            continue
        closed, log = closure.augment(g, closure.within(split.C))
        res = kernelize.kernelize(closed, split)
        kc = exact.held_karp(res.graph)
        truth = exact.held_karp(g)
        assert (kc is None) == (truth is None), i
        if kc is not None:
            lifted = closure.lift_cycle(g, log, kernelize.lift_kernel_cycle(closed, res, kc))
            assert is_ham_cycle(g, lifted)
            ham += 1
        done += 1
    record_property("detail", f"{ham} Hamiltonian / {done - ham} not, {budget.elapsed:.1f}s")
    budget.check()


@pytest.mark.criterion(3, "closure preserves Hamiltonicity and cycles lift")
def test_closure_soundness(record_property):
    budget = Budget(60)
    rng = np.random.default_rng(303)
    ham = 0
    for i in range(500):
        n = int(rng.integers(3, 13))
        g = gnp(n, float(rng.uniform(0.2, 0.85)), i)
        closed, log = closure.augment(g)
        closure.check_log(g, log)
        before = exact.brute_force(g, cap=12)
        after = exact.brute_force(closed, cap=12)
        assert (before is None) == (after is None), i
        if after is not None:
            assert is_ham_cycle(g, closure.lift_cycle(g, log, after)), i
            ham += 1
    record_property("detail", f"{ham} Hamiltonian / {500 - ham} not, {budget.elapsed:.1f}s")
    budget.check()


@pytest.mark.criterion(4, "minimum degree n/2 gives a cycle through the closure")
def test_dirac_completeness(record_property):
    budget = Budget(30)
    rng = np.random.default_rng(404)
    for i in range(100):
        n = int(rng.integers(3, 201))
        model = ("count-relaxed", "degree-relaxed")[i % 2]
        g = generate(InstanceSpec(model, n, 0, i)).graph
        assert 2 * g.min_degree >= n
        out = kernelize.solve_count_relaxed(g)
        assert out.hamiltonian and out.info["branch"] == "dirac"
        assert is_ham_cycle(g, out.cycle), i
    record_property("detail", f"100 instances, {budget.elapsed:.1f}s")
    budget.check()


def _criterion5_corpus():
    kept = 0
    seed = 0
    while kept < 300:
        seed += 1
        r = random.Random(seed)
        kind = ("dense", "near-bipartite", "wheel")[seed % 3]
        if kind == "dense":
            g = gnp(r.randint(5, 60), r.uniform(0.4, 0.8), seed)
        elif kind == "near-bipartite":
            a = r.randint(3, 20)
            g = near_bipartite(a, r.randint(0, 3), r.randint(0, 3), r.randint(0, 2), r.randint(0, a), seed)
        else:
            h = r.randint(1, 18)
            g = wheel_type(h, r.randint(3, 2 * h + 4), seed)
        if g.n < 3 or 3 * g.min_degree < g.n + 2 or not is_two_connected(g):
            continue
        kept += 1
        yield kind, g


@pytest.mark.criterion(5, "extension returns a cycle or an independent set of size delta+1")
def test_cycle_or_independent_set(record_property):
    budget = Budget(120)
    counts = {"cycle": 0, "indep": 0, "small": 0, "wheel": 0}
    for kind, g in _criterion5_corpus():
        res = nw.find_cycle_or_indepset(g)
        if isinstance(res, nw.IndepSet):
            members = res.members()
            assert len(members) == g.min_degree + 1
            assert all(not g.has_edge(u, v) for u in members for v in members if u < v)
            counts["indep"] += 1
        else:
            assert is_ham_cycle(g, res)
            counts["cycle"] += 1
        if kind == "wheel":
            assert not isinstance(res, nw.IndepSet)
            counts["wheel"] += 1
        if g.n <= 14:
            counts["small"] += 1
            if exact.held_karp(g) is not None:
                assert not isinstance(res, nw.IndepSet)
    record_property("detail", f"{counts['cycle']} cycles, {counts['indep']} independent sets, "
                              f"{counts['small']} with n<=14, {counts['wheel']} wheel-type, "
                              f"{budget.elapsed:.1f}s")
    assert counts["indep"] > 0 and counts["small"] > 0
    budget.check()


@pytest.mark.criterion(6, "colour-coding path cover agrees with the exact cover")
def test_path_cover_oracle(record_property):
    budget = Budget(300)
    rng = np.random.default_rng(606)
    misses = found = 0
    for i in range(400):
        n = int(rng.integers(2, 15))
        g = gnp(n, float(rng.uniform(0.05, 0.45)), 6000 + i)
        t = int(rng.integers(0, min(4, n) + 1))
        best = exact.exact_min_path_cover(g, bitset.full(n)).size
        cover = pc.cover_with_deficiency(g, t, pc.TrialPlan(t, 1e-6, i))
        if cover is not None:
            assert best <= n - t, "a cover was reported that cannot exist"
            pc.check_path_cover(g, cover, bitset.full(n), n - t)
            found += 1
        elif best <= n - t:
            misses += 1
    record_property("detail", f"{found} found, {400 - found} not, {misses} one-sided misses, "
                              f"{budget.elapsed:.1f}s")
    assert misses <= 1
    budget.check()


@pytest.mark.criterion(7, "degree-relaxed solver matches Held-Karp; K19,21 gives deficiency 2")
def test_degree_relaxed_end_to_end(record_property):
    budget = Budget(300)
    rng = np.random.default_rng(707)
    ham = 0
    for i in range(200):
        n = int(rng.integers(3, 19))
        k = int(rng.integers(0, 3))
        g = generate(InstanceSpec("degree-relaxed", n, k, i, planted=bool(i % 2))).graph
        truth = exact.held_karp(g) is not None
        for guard in (True, False):
            out = mindeg.solve_degree_relaxed(g, seed=i, guard=guard)
            assert out.hamiltonian == truth, (i, guard)
            if out.hamiltonian:
                assert is_ham_cycle(g, out.cycle)
            else:
                assert certify.verify(g, out.certificate, seed=i + 1).supported
        ham += truth
    g = from_nx(nx.complete_bipartite_graph(19, 21))
    out = mindeg.solve_degree_relaxed(g, seed=7)
    cert = out.certificate
    assert isinstance(cert, mindeg.CutCertificate) and cert.deficiency == 2
    assert cert.S.bit_count() == 19 and cert.T.bit_count() == 21
    assert mindeg.verify_certificate(g, cert, seed=8).supported
    record_property("detail", f"{ham} Hamiltonian / {200 - ham} not; K19,21 deficiency 2 supported, "
                              f"{budget.elapsed:.1f}s")
    budget.check()


@pytest.mark.criterion(8, "n=5000 solves in under 60s (k=8) and 30s (k=0)")
def test_scaling(record_property):
    notes = []
    for k, limit in ((8, 60.0), (0, 30.0)):
        for planted in (False, True):
            g = generate(InstanceSpec("count-relaxed", 5000, k, 8, planted=planted)).graph
            start = time.perf_counter()
            out = kernelize.solve_count_relaxed(g)
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"k={k} planted={planted} took {elapsed:.1f}s"
            if out.hamiltonian:
                assert is_ham_cycle(g, out.cycle)
            else:
                assert not planted and certify.verify(g, out.certificate).supported
            notes.append(f"k={k}{' planted' if planted else ''} {elapsed:.2f}s "
                         f"{'ham' if out.hamiltonian else 'non-ham'}")
    record_property("detail", ", ".join(notes))


def _negative_outcomes():
    yield "K19,21", from_nx(nx.complete_bipartite_graph(19, 21)), {}
    yield "K25,27", from_nx(nx.complete_bipartite_graph(25, 27)), {}
    yield "K35,38", from_nx(nx.complete_bipartite_graph(35, 38)), {}
    yield "two cliques", two_cliques(), {}
    yield "petersen", from_nx(nx.petersen_graph()), {"route": "exact"}
    pendant = Graph.from_edges(
        7, [(i, j) for i in range(6) for j in range(i + 1, 6)] + [(6, 0)])
    yield "K6 pendant", pendant, {"route": "kernel"}
    for seed in range(400):
        r = random.Random(seed)
        g = near_bipartite(r.randint(4, 8), r.randint(1, 3), r.randint(0, 4), r.randint(0, 2),
                           r.randint(0, 2), seed)
        yield f"near-bipartite {seed}", g, {"guard": False}


@pytest.mark.criterion(9, "certificates re-verify; corrupted certificates are refuted")
def test_certificate_round_trip(record_property):
    budget = Budget(120)
    kinds = {}
    for name, g, opts in _negative_outcomes():
        route = opts.get("route", "mindeg")
        if route == "kernel":
            out = kernelize.solve_count_relaxed(g)
        elif route == "exact":
            cyc = exact.held_karp(g)
            assert cyc is None
            out = None
            cert = Exhaustive("held_karp", g.n)
        else:
            out = mindeg.solve_degree_relaxed(g, seed=11, guard=opts.get("guard", True))
        if out is not None:
            if out.hamiltonian:
                continue
            cert = out.certificate
        data = certify.to_json(cert)
        again = certify.from_json(data, g)
        res = certify.verify(g, cert if data["type"] == "kernel" else again, seed=12345)
        assert res.supported, (name, data["type"], res.detail)
        kinds[data["type"]] = kinds.get(data["type"], 0) + 1
    assert set(kinds) == {"cut", "not-2-connected", "exhaustive", "kernel"}

    refuted = 0
    rng = np.random.default_rng(909)
    for i in range(40):
        n = int(rng.integers(36, 61))
        inst = generate(InstanceSpec("degree-relaxed", n, int(rng.integers(0, 2)), 900 + i, planted=True))
        g = inst.graph
        s = (n - int(rng.integers(1, 4))) // 2
        S = bitset.from_iter(int(v) for v in rng.choice(n, size=s, replace=False))
        T = bitset.full(n) & ~S
        cert = mindeg.CutCertificate(S, T, T.bit_count() - s, 1e-6, i)
        res = certify.verify(g, certify.from_json(certify.to_json(cert), g), seed=i + 1)
        assert not res.supported and res.cover is not None
        pc.check_path_cover(g, res.cover, T, s)
        refuted += 1
    # a genuine certificate moved onto a Hamiltonian relative of its graph
    g = from_nx(nx.complete_bipartite_graph(19, 21)).with_edges([(30, 31), (32, 33)])
    cert = mindeg.solve_degree_relaxed(from_nx(nx.complete_bipartite_graph(19, 21)), seed=3).certificate
    res = certify.verify(g, cert, seed=4)
    assert not res.supported
    pc.check_path_cover(g, res.cover, cert.T, 19)
    refuted += 1
    record_property("detail", f"supported {kinds}; {refuted} corrupted refuted, {budget.elapsed:.1f}s")
    budget.check()
