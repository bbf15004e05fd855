from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from pathfactor.extremal import (
    H_EDGES,
    audit_no_factor,
    audit_theorem2,
    build_Gn,
    build_H,
    build_Q,
    copy_profile,
    gadget_report,
    g_analogue,
    hamiltonian_path_exists,
    miniature,
    miniature_chain,
    params,
    symbolic_chain,
    verify_lemma53,
)
from pathfactor.graph import complete_graph, cycle_graph, friendship_graph
from pathfactor.toughness import thresholds


@pytest.mark.parametrize("k, lmr", [(29, (2, 7, 1)), (36, (2, 8, 7)), (100, (10, 23, 7))])
def test_params_examples(k, lmr):
    p = params(k)
    assert (p.l, p.m, p.r) == lmr and all(p.clauses().values())
    assert json.loads(p.to_json()) == {"k": k, "l": lmr[0], "m": lmr[1], "r": lmr[2], "n": 1}


def test_params_rejects_small_k():
    with pytest.raises(ValueError):
        params(28)
    with pytest.raises(ValueError):
        params(29, 0)


@given(st.integers(29, 20_000))
def test_params_clauses_property(k):
    p = params(k)
    assert p.l + 8 * p.m + p.r == 2 * k + 1 and p.m >= 2 * p.l + 3


def test_gadget_shape():
    h = build_H()
    assert h.graph.n == 8 and h.graph.m == 12 and len(H_EDGES) == 12
    assert h.terminals() == [0, 1]
    rep = gadget_report()
    assert rep["degrees"] == [2, 2, 2, 2, 4, 4, 4, 4]
    assert rep["inner_2connected"] and rep["inner_independence"] == 2
    # the gadget alone is an even cycle with a 4-cycle of chords
    assert hamiltonian_path_exists(h.graph).status == "yes"


def test_lemma53_table():
    rep = verify_lemma53()
    assert rep.ok and len(rep.rows) == 64
    assert rep.min_size == {0: 2, 1: 3, 2: 4}
    assert json.loads(rep.to_json())["passed"] == 64


def test_lemma53_against_oracle():
    h = build_H().graph
    for size in range(7):
        for extra in combinations(range(2, 8), size):
            x = (0, 1) + extra
            odd = sum(1 for o in oracles.component_orders(h, x) if o % 2)
            assert odd <= 2 and (odd < 1 or len(x) >= 3) and (odd < 2 or len(x) >= 4)


def test_orders():
    q = build_Q(29)
    assert q.graph.n == 59 and (q.l, q.m, q.r) == (2, 7, 1)
    assert len(q.select("L")) == 2 and len(q.select("R")) == 1 and len(q.terminals()) == 14
    g = build_Gn(29, 1)
    assert g.graph.n == 178 and g.copies == 3 and len(g.select("Q0")) == 1
    assert build_Gn(29, 2).graph.n == 2 + 5 * 59
    assert miniature(1, 2, 1).graph.n == 18


def test_miniature_structure():
    q = miniature(1, 2, 1)
    g = q.graph
    clique = q.terminals() + q.select("R")
    assert all(g.has_edge(a, b) for a, b in combinations(clique, 2))
    assert all(g.degree(v) == g.n - 1 for v in q.select("L"))
    with pytest.raises(ValueError):
        miniature(0, 0, 1)
    a = g_analogue(q, 1)
    assert a.graph.n == 1 + 3 * 18 and a.graph.degree(0) == a.graph.n - 1


@pytest.mark.parametrize("lmr", [(0, 1, 1), (1, 1, 1), (0, 1, 3), (2, 1, 1), (1, 1, 2)])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_copy_profile_against_brute_force(lmr, k):
    q = miniature(*lmr)
    g = q.graph
    prof = copy_profile(q, k)
    for t in range(g.n):
        brute = max(oracles.weighted_sum(g, x, k) for x in combinations(range(g.n), t))
        assert prof.best[t] == brute, t
        assert oracles.weighted_sum(g, prof.witness[t], k) == brute
        assert len(prof.witness[t]) == t


def test_symbolic_chain_examples():
    assert all(symbolic_chain(29).values())
    assert all(symbolic_chain(36, 3).values())


@given(st.integers(29, 5000), st.integers(1, 6))
def test_symbolic_chain_property(k, n):
    assert all(symbolic_chain(k, n).values())


def test_theorem2_audit_k29():
    a = audit_theorem2(29, 1, samples=3000, seed=1)
    assert a.ok and a.order == 178 and a.bound == thresholds(29).thm2
    assert a.structured_ratio == Fraction(45, 91) == a.gadget_table_ratio
    assert a.random_ratio <= a.structured_ratio <= a.bound
    data = json.loads(a.to_json())
    assert data["violations"] == []


def test_theorem2_audit_larger_n():
    a = audit_theorem2(36, 2, samples=500, seed=2)
    assert a.ok and a.structured_ratio <= a.bound


def test_hamiltonian_status():
    assert hamiltonian_path_exists(cycle_graph(5)).status == "yes"
    assert hamiltonian_path_exists(friendship_graph(3), dp_limit=10).status == "no"
    assert hamiltonian_path_exists(complete_graph(14), budget=0).status == "unknown"


def test_miniature_chains():
    small = miniature_chain(0, 1, 1)
    assert small["hamiltonian_path"] == "yes" and small["solvers_agree"]
    mid = miniature_chain(1, 2, 1)
    assert (mid["order"], mid["hamiltonian_path"], mid["dp"]) == (18, "yes", "yes")
    assert mid["analogue_factor"] == "not applicable"
    big = miniature_chain(0, 3, 1)
    assert big["order"] == 25 and big["hamiltonian_path"] == "no"
    assert big["analogue_order"] == 76 and big["analogue_factor"] == "none" and big["consistent"]


def test_no_factor_audit():
    a = audit_no_factor(29, 1, budget=10**4, miniatures=[(0, 1, 1)])
    assert a.ok and all(a.arithmetic.values())
    assert a.full_scale_hamiltonian in ("yes", "no", "unknown")
    assert json.loads(a.to_json())["k"] == 29
