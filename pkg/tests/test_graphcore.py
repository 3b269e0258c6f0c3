import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corank.graphcore import InvalidNodeError, UndefinedConductanceError, WeightedGraph, example_graph

from worked_example import LNS_CONDUCTANCE


@pytest.fixture(scope="module")
def g():
    return example_graph()


def test_example_graph_shape(g):
    assert g.nodes == frozenset(range(1, 11))
    assert g.n_edges == 18
    assert g.endpoints(1) == (1, 2)
    assert g.endpoints(18) == (9, 10)
    assert g.map_index(7, 4) == 9
    assert g.weight(15) == 9


def test_incident_edges(g):
    assert g.incident_edges(7) == {9, 11, 12, 13, 14, 15}
    assert g.incident_edges(1) == {1, 2, 3}
    iso = WeightedGraph([0, 1, 2], [(0, 1, 1.0)])
    assert iso.incident_edges(2) == frozenset()
    with pytest.raises(InvalidNodeError):
        g.incident_edges(99)


def test_weighted_degree_in(g):
    comm = {1, 2, 3, 4, 8, 9, 10}
    assert g.weighted_degree_in(1, comm) == 20
    assert g.weighted_degree_in(4, comm) == 12
    assert g.weighted_degree_in(7, {4, 5, 6, 7, 8, 9, 10}) == 39
    with pytest.raises(ValueError):
        g.weighted_degree_in(7, comm)


def test_degree_sum_is_twice_total_weight(g):
    total = sum(g.weighted_degree_in(v, g.nodes) for v in g.nodes)
    assert total == pytest.approx(2 * g.total_weight())


def brute_conductance(g, s, weighted=False):
    nodes = sorted(g.nodes)
    pos = {v: k for k, v in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for i, j, w in g.edges():
        a[pos[i], pos[j]] = a[pos[j], pos[i]] = w if weighted else 1
    x = np.array([v in s for v in nodes])
    cut = a[x][:, ~x].sum()
    denom = min(a[x].sum(), a[~x].sum())
    return 0.0 if denom == 0 else cut / denom


@pytest.mark.parametrize("members, expected", [(sorted(s), v) for s, v in LNS_CONDUCTANCE.items()])
def test_conductance_reference_values(g, members, expected):
    assert g.conductance(members) == pytest.approx(expected, abs=2e-3)


def test_conductance_exact_fractions(g):
    assert g.conductance({1, 2, 3, 4}) == 3 / 15
    assert g.conductance({4, 5}) == 7 / 9
    assert g.conductance({8, 9, 10}) == 3 / 9
    assert g.conductance({1, 2, 3, 4, 5}) == 4 / 18


def test_conductance_undefined(g):
    with pytest.raises(UndefinedConductanceError):
        g.conductance(set())
    with pytest.raises(UndefinedConductanceError):
        g.conductance(g.nodes)


def test_weighted_conductance_switch(g):
    s = {1, 2, 3, 4}
    # cut weights 2+2+5, volume 9+6+5+7+2+5 counted from each side
    assert g.conductance(s, weighted=True) == pytest.approx(brute_conductance(g, s, weighted=True))
    assert g.conductance(s, weighted=True) != g.conductance(s)


def test_conductance_matches_brute_force_everywhere(g):
    for r in range(1, 10):
        for s in itertools.combinations(sorted(g.nodes), r):
            assert g.conductance(s) == pytest.approx(brute_conductance(g, set(s)))
            assert g.conductance(s, weighted=True) == pytest.approx(brute_conductance(g, set(s), True))


@st.composite
def graphs(draw, max_nodes=12):
    n = draw(st.integers(2, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True, max_size=30))
    weights = draw(st.lists(st.integers(1, 9), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph(range(n), [(i, j, w) for (i, j), w in zip(chosen, weights)])


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_conductance_symmetric_and_bounded(g, data):
    nodes = sorted(g.nodes)
    s = data.draw(st.sets(st.sampled_from(nodes), min_size=1, max_size=len(nodes) - 1))
    phi = g.conductance(s)
    assert 0 <= phi <= 1
    assert phi == g.conductance(g.nodes - s)


def test_edge_list_loader(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# comment\n3 1 2.5\n\n1 2 1\n")
    g = WeightedGraph.from_edge_list(f, nodes=[7])
    assert g.edges() == [(1, 3, 2.5), (1, 2, 1.0)]
    assert 7 in g.nodes
    f.write_text("1 2\n")
    with pytest.raises(ValueError, match="line 1"):
        WeightedGraph.from_edge_list(f)


@pytest.mark.parametrize("edges", [[(1, 1, 1.0)], [(1, 2, 0.0)], [(1, 2, 1.0), (2, 1, 1.0)]])
def test_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        WeightedGraph((), edges)
