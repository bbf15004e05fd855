from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

import oracles
from conftest import graphs
from pathfactor.catalogue import catalogue, random_graph
from pathfactor.graph import (
    complete_graph,
    cycle_graph,
    friendship_graph,
    mask_of,
    path_graph,
    petersen_graph,
    star_graph,
)
from pathfactor.paths import (
    SearchBudgetExceeded,
    hamiltonian_path,
    hamiltonian_path_dp,
    is_path_in,
)


def _spanning(g, p):
    return p is not None and len(p) == g.n and is_path_in(g, p)


def test_examples():
    assert _spanning(path_graph(5), hamiltonian_path(path_graph(5)))
    assert hamiltonian_path(star_graph(3)) is None
    assert hamiltonian_path(friendship_graph(3)) is None
    assert _spanning(petersen_graph(), hamiltonian_path(petersen_graph()))


def test_restricted_to_subset():
    g = cycle_graph(6)
    p = hamiltonian_path(g, mask_of([0, 1, 2, 3]))
    assert sorted(p) == [0, 1, 2, 3] and is_path_in(g, p)
    assert hamiltonian_path(g, mask_of([0, 2])) is None


def test_budget_raises():
    with pytest.raises(SearchBudgetExceeded):
        hamiltonian_path(complete_graph(12), budget=3)


def test_dp_order_limit():
    with pytest.raises(ValueError):
        hamiltonian_path_dp(complete_graph(6), max_order=5)


def test_catalogue_agreement():
    for g in catalogue(7):
        expected = oracles.has_hamiltonian_path(g)
        assert _spanning(g, hamiltonian_path(g)) == expected
        assert _spanning(g, hamiltonian_path_dp(g)) == expected


@given(graphs(min_n=1, max_n=9))
def test_backtracking_matches_dp(g):
    p, q = hamiltonian_path(g), hamiltonian_path_dp(g)
    assert (p is None) == (q is None)
    if p is not None:
        assert _spanning(g, p) and _spanning(g, q)


def test_random_sparse_against_dp():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(8, 17))
        g = random_graph(n, float(rng.uniform(0.12, 0.35)), rng)
        p = hamiltonian_path(g)
        assert (p is None) == (hamiltonian_path_dp(g) is None)
        assert p is None or _spanning(g, p)
