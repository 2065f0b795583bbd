import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from diracham import closure, exact
from diracham.closure import AugmentationLog
from diracham.errors import ContractViolation
from diracham.graph import Graph, canonical_cycle, is_ham_cycle
from conftest import brute_ham, from_nx, gnp, graphs


def k4_minus_02():
    return Graph.from_edges(4, [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_k4_minus_edge():
    closed, log = closure.augment(k4_minus_02())
    assert closed == Graph.complete(4)
    assert log == [(0, 2)]


def test_c5_fixed_point():
    c5 = from_nx(nx.cycle_graph(5))
    closed, log = closure.augment(c5)
    assert closed == c5 and len(log) == 0


def test_c4_to_k4():
    closed, log = closure.augment(from_nx(nx.cycle_graph(4)))
    assert closed == Graph.complete(4)
    assert log == [(0, 2), (1, 3)]


def test_lift_k4_minus_edge():
    lifted = closure.lift_cycle(k4_minus_02(), AugmentationLog.from_pairs([(0, 2)]), [0, 2, 1, 3])
    assert lifted == (0, 3, 2, 1)


def test_lift_empty_log_identity():
    c5 = from_nx(nx.cycle_graph(5))
    assert closure.lift_cycle(c5, AugmentationLog(), [0, 1, 2, 3, 4]) == (0, 1, 2, 3, 4)


def test_lift_c4():
    c4 = from_nx(nx.cycle_graph(4))
    lifted = closure.lift_cycle(c4, AugmentationLog.from_pairs([(0, 2), (1, 3)]), [0, 2, 1, 3])
    assert canonical_cycle(lifted) == canonical_cycle([0, 1, 2, 3])


def test_lift_rejects_invalid_cycle():
    c4 = from_nx(nx.cycle_graph(4))
    with pytest.raises(ContractViolation):
        closure.lift_cycle(c4, AugmentationLog.from_pairs([(0, 2)]), [0, 2, 1, 3])
    with pytest.raises(ContractViolation):
        closure.lift_cycle(c4, AugmentationLog.from_pairs([(0, 2)]), [0, 1, 2])


def test_log_json_round_trip():
    log = AugmentationLog.from_pairs([(3, 1), (0, 2)])
    assert list(log) == [(1, 3), (0, 2)]
    assert log.to_json() == "[[1, 3], [0, 2]]"
    assert AugmentationLog.from_json(log.to_json()) == log


@given(graphs(min_n=3, max_n=10))
def test_log_entries_legal(g):
    closed, log = closure.augment(g)
    closure.check_log(g, log)
    assert g.is_subgraph_of(closed)
    assert closed.num_edges == g.num_edges + len(log)
    # fixed point: no remaining eligible pair
    d = closed.degrees
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not closed.has_edge(u, v):
                assert d[u] + d[v] < g.n


@given(graphs(min_n=3, max_n=9))
def test_hamiltonicity_preserved_and_lifted(g):
    closed, log = closure.augment(g)
    cyc = exact.held_karp(closed)
    assert (cyc is not None) == (exact.held_karp(g) is not None)
    if cyc is not None:
        assert is_ham_cycle(g, closure.lift_cycle(g, log, cyc))


def test_dirac_and_ore_complete():
    rng = np.random.default_rng(2)
    for i in range(60):
        n = int(rng.integers(3, 40))
        g = gnp(n, 0.9, i)
        closed, log = closure.augment(g)
        ore = all(g.has_edge(u, v) or g.degree(u) + g.degree(v) >= n
                  for u in range(n) for v in range(u + 1, n))
        if ore:
            assert closed.num_edges == n * (n - 1) // 2
            assert is_ham_cycle(g, closure.lift_cycle(g, log, list(range(n))))


@pytest.mark.parametrize("kind", ["within", "between"])
def test_restricted_filters(kind):
    rng = np.random.default_rng(5)
    for i in range(40):
        n = int(rng.integers(4, 20))
        g = gnp(n, 0.6, i)
        side = int(rng.integers(1, 1 << n))
        flt = closure.EdgeFilter(kind, side)
        closed, log = closure.augment(g, flt)
        closure.check_log(g, log)
        assert all(flt.allows(u, v) for u, v in log)
        d = closed.degrees
        for u in range(n):
            for v in range(u + 1, n):
                if flt.allows(u, v) and not closed.has_edge(u, v):
                    assert d[u] + d[v] < n


def test_brute_force_oracle_small():
    for i in range(80):
        g = gnp(7, 0.5, 100 + i)
        closed, log = closure.augment(g)
        assert brute_ham(g) == brute_ham(closed)
