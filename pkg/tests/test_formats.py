import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from diracham import formats
from diracham.errors import GraphFormatError
from diracham.graph import Graph
from conftest import from_nx, gnp, graphs


@pytest.mark.parametrize("fmt", formats.FORMATS)
@given(g=graphs(max_n=50))
def test_round_trip(fmt, g):
    assert formats.parse(formats.serialize(g, fmt), fmt) == g


@pytest.mark.parametrize("fmt", formats.FORMATS)
def test_round_trip_corpus(fmt):
    rng = np.random.default_rng(1)
    for i in range(1000):
        g = gnp(int(rng.integers(0, 51)), float(rng.random()), i)
        assert formats.parse(formats.serialize(g, fmt), fmt) == g


def test_edge_list_triangle():
    g = formats.parse("3\n0 1\n1 2\n2 0", "edge-list")
    assert g.degrees.tolist() == [2, 2, 2]
    assert formats.serialize(g, "edge-list") == b"3\n0 1\n0 2\n1 2\n"


def test_empty_graph_edge_list():
    assert formats.serialize(Graph.empty(4), "edge-list") == b"4\n"


def test_loop_rejected_with_offset():
    with pytest.raises(GraphFormatError) as exc:
        formats.parse(b"2\n0 0", "edge-list")
    assert exc.value.offset == 2
    assert "byte offset 2" in str(exc.value)


@pytest.mark.parametrize("data,fmt", [
    (b"3\n0 1\n0 1\n", "edge-list"),
    (b"3\n0 5\n", "edge-list"),
    (b"p edge 3 1\ne 1 4\n", "dimacs-edge"),
    (b"p edge 3 2\ne 1 2\n", "dimacs-edge"),
    (b"e 1 2\n", "dimacs-edge"),
    (b"B\x7f", "graph6"),
])
def test_malformed(data, fmt):
    with pytest.raises(GraphFormatError):
        formats.parse(data, fmt)


def test_petersen_graph6_matches_networkx(petersen):
    G = nx.petersen_graph()
    expected = nx.to_graph6_bytes(G, header=False)
    assert formats.serialize(petersen, "graph6") == expected
    assert formats.parse(expected, "graph6") == petersen


def test_k4_graph6_round_trip():
    k4 = Graph.complete(4)
    data = formats.serialize(k4, "graph6")
    assert data == b"C~\n"
    assert formats.parse(data, "graph6") == k4
    assert formats.parse(b">>graph6<<C~", "graph6") == k4


@pytest.mark.parametrize("n", [62, 63, 64, 100])
def test_graph6_size_forms_match_networkx(n):
    G = nx.gnp_random_graph(n, 0.3, seed=n)
    g = from_nx(G)
    assert formats.serialize(g, "graph6") == nx.to_graph6_bytes(G, header=False)
    assert formats.parse(nx.to_graph6_bytes(G), "graph6") == g


def test_dimacs_one_based():
    g = formats.parse(b"c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n", "dimacs-edge")
    assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]
    assert formats.serialize(g, "dimacs-edge").startswith(b"p edge 3 3\n")


def test_format_for_path(tmp_path):
    g = Graph.complete(5)
    for name in ("a.g6", "a.dimacs", "a.txt"):
        formats.write_graph(g, tmp_path / name)
        assert formats.read_graph(tmp_path / name) == g
    with pytest.raises(ValueError):
        formats.format_for_path("graph.xyz")
