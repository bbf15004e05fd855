from __future__ import annotations

import json

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from oracles import component_orders, nxg
from pathfactor.catalogue import graphs_of_order, random_graph
from pathfactor.graph import (
    DuplicateEdgeError,
    Graph,
    GraphFormatError,
    LoopError,
    MalformedHeaderError,
    VertexRangeError,
    WidthError,
    complete_graph,
    component_profile,
    components,
    copies,
    cycle_graph,
    delete,
    disjoint_union,
    empty_graph,
    induced,
    join,
    parse_edge_list,
    parse_graph6,
    path_graph,
    petersen_graph,
    profile_json,
    star_graph,
    to_edge_list,
    to_graph6,
)


def test_components_examples():
    assert [len(c) for c in components(path_graph(3))] == [3]
    k3k1 = disjoint_union([complete_graph(3), complete_graph(1)])
    assert sorted(len(c) for c in components(k3k1)) == [1, 3]
    assert [len(c) for c in components(petersen_graph())] == [10]


def test_components_ordered_by_least_vertex():
    g = Graph(6, [(4, 5), (1, 3), (0, 2)])
    assert components(g) == [(0, 2), (1, 3), (4, 5)]


def test_profile_examples():
    p = component_profile(complete_graph(3), [])
    assert p.odd_counts == {1: 1} and p.count(3) == 1
    assert component_profile(star_graph(3), [0]).count(1) == 3
    assert component_profile(path_graph(7), [3]).count(3) == 2


def test_profile_json_schema():
    data = json.loads(profile_json(path_graph(7), [3], k=3))
    assert data == {"n": 7, "deleted": [3], "components": [3, 3], "c_odd_small": {"1": 0, "3": 2, "5": 0}}


def test_profile_rejects_out_of_range():
    with pytest.raises(VertexRangeError):
        component_profile(path_graph(3), [5])


def test_delete_and_induced():
    assert delete(cycle_graph(5), []).graph == cycle_graph(5)
    sub = delete(cycle_graph(5), [2])
    assert nx.is_isomorphic(nxg(sub.graph), nx.path_graph(4))
    assert sub.labels == (0, 1, 3, 4)
    assert sub.to_original([2]) == [3]
    assert induced(complete_graph(4), [0, 2, 3]).graph == complete_graph(3)


def test_constructions():
    w = join(complete_graph(1), cycle_graph(4))
    assert (w.n, w.m) == (5, 8)
    two = disjoint_union([complete_graph(2), complete_graph(2)])
    assert (two.n, two.m) == (4, 2)
    g = join(complete_graph(2), empty_graph(2))
    assert g.m == 5 and not g.has_edge(2, 3)
    assert copies(cycle_graph(5), 2).n == 10
    with pytest.raises(ValueError):
        copies(cycle_graph(5), 0)


@given(graphs(max_n=7), graphs(max_n=7))
def test_join_and_union_counts(g1, g2):
    assert join(g1, g2).m == g1.m + g2.m + g1.n * g2.n
    u = disjoint_union([g1, g2])
    assert u.degrees() == g1.degrees() + g2.degrees()


@given(graphs(max_n=10), graphs(max_n=10))
def test_profile_against_networkx(g, h):
    x = [v for v in range(g.n) if v < h.n and h.degree(v) % 2]
    p = component_profile(g, x)
    assert sorted(p.component_orders) == component_orders(g, x)
    assert sum(p.component_orders) == g.n - len(x)
    assert p.odd_components == sum(1 for o in p.component_orders if o % 2)
    assert component_profile(g).total_components == len(components(g))


def test_graph6_known_strings():
    # reference encodings from networkx
    for g in (empty_graph(0), complete_graph(1), path_graph(3), petersen_graph(), cycle_graph(7)):
        ref = nx.to_graph6_bytes(nxg(g), header=False).decode().strip()
        assert to_graph6(g) == ref
    assert to_graph6(empty_graph(0)) == "?"


def test_graph6_round_trip_exhaustive():
    for n in range(0, 9):
        for g in graphs_of_order(n):
            s = to_graph6(g)
            assert parse_graph6(s) == g
            assert to_graph6(parse_graph6(s)) == s


def test_graph6_round_trip_random_large():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        g = random_graph(int(rng.integers(0, 65)), float(rng.random()), rng)
        s = to_graph6(g)
        assert parse_graph6(s) == g
        assert s == nx.to_graph6_bytes(nxg(g), header=False).decode().strip()


def test_graph6_long_header():
    g = path_graph(70)
    assert to_graph6(g).startswith("~")
    assert parse_graph6(to_graph6(g)) == g


@pytest.mark.parametrize(
    "text, err",
    [("", MalformedHeaderError), ("~?", MalformedHeaderError), ("D", WidthError),
     ("Bx", WidthError), ("A\x10", MalformedHeaderError)],
)
def test_graph6_errors(text, err):
    with pytest.raises(err):
        parse_graph6(text)


def test_edge_list():
    assert parse_edge_list("0 1\n1 2", n=3) == path_graph(3)
    assert parse_edge_list(to_edge_list(petersen_graph())) == petersen_graph()
    assert to_edge_list(path_graph(3)) == "n 3\n0 1\n1 2\n"


@pytest.mark.parametrize(
    "text, err",
    [("n x\n0 1", MalformedHeaderError), ("n 3\n0 1 2", WidthError), ("n 2\n0 5", VertexRangeError),
     ("n 2\n1 1", LoopError), ("n 3\n0 1\n1 0", DuplicateEdgeError)],
)
def test_edge_list_errors(text, err):
    with pytest.raises(err):
        parse_edge_list(text)
    assert issubclass(err, GraphFormatError)
