from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

import oracles
from pathfactor.catalogue import (
    KNOWN_COUNTS,
    cache_dir,
    catalogue,
    graphs_of_order,
    random_graph,
    random_graphs,
)

# connected graphs up to isomorphism (OEIS A001349)
CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


@pytest.mark.parametrize("n", range(0, 9))
def test_counts(n):
    assert len(graphs_of_order(n)) == KNOWN_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 9))
def test_connected_counts(n):
    assert len(graphs_of_order(n, connected=True)) == CONNECTED[n]


def test_pairwise_non_isomorphic():
    gs = [oracles.nxg(g) for g in graphs_of_order(5)]
    for i, a in enumerate(gs):
        assert not any(nx.is_isomorphic(a, b) for b in gs[i + 1:])


def test_uncached_matches_cached():
    assert graphs_of_order(6, use_cache=False) == graphs_of_order(6)
    assert (cache_dir() / "graphs6.g6").exists()


def test_catalogue_iterates_orders():
    assert sum(1 for _ in catalogue(5)) == sum(KNOWN_COUNTS[n] for n in range(1, 6))
    assert all(g.n == 4 for g in catalogue(4, min_order=4))


def test_negative_order():
    with pytest.raises(ValueError):
        graphs_of_order(-1)


def test_random_sources():
    rng = np.random.default_rng(0)
    assert random_graph(10, 0.0, rng).m == 0 and random_graph(10, 1.0, rng).m == 45
    gs = list(random_graphs(20, (3, 6), seed=4))
    assert len(gs) == 20 and all(3 <= g.n <= 6 for g in gs)
    assert gs == list(random_graphs(20, (3, 6), seed=4))
