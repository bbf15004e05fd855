"""The acceptance matrix: twelve exact checks, each with its own oracle.

Every criterion returns a pass flag and a one-line summary; ``run`` prints
one line per criterion.  ``seed`` feeds only the sampled layers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import _kernels as K
from .catalogue import graphs_of_order, random_graph
from .ear import (
    compute_heights,
    decomposition_violations,
    find_odd_ear_decomposition,
    height_claim_violations,
    improve_h1,
    witness_set,
)
from .extremal import (
    audit_theorem2,
    gadget_report,
    miniature_chain,
    params,
    verify_lemma53,
)
from .factor import construct_factor_via_prop21, exact_factor, find_bf_violator, validate_factor
from .graph import Graph, component_profile, friendship_graph
from .matching import barrier_set, deficiency, is_hypomatchable, matching_number, validate_barrier
from .toughness import thresholds, theorem1_consistency_scan

__all__ = ["Criterion", "CriterionResult", "CRITERIA", "run", "format_line"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: str


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    check: Callable[[int], tuple[bool, str]]
    sampled: bool = False


def _lemma53(seed: int) -> tuple[bool, str]:
    rep = verify_lemma53()
    passed = len(rep.rows) - len(rep.violations)
    return rep.ok, f"{passed}/{len(rep.rows)} deletion sets within the bound"


def _figure1(seed: int) -> tuple[bool, str]:
    rep = gadget_report()
    ok = (
        rep["degrees"] == [2, 2, 2, 2, 4, 4, 4, 4]
        and rep["inner_2connected"]
        and rep["inner_independence"] == 2
    )
    return ok, (
        f"degrees {rep['degrees']}, inner 2-connected {rep['inner_2connected']}, "
        f"inner independence {rep['inner_independence']}"
    )


def _lemma51(seed: int) -> tuple[bool, str]:
    bad = []
    for k in range(29, 5001):
        try:
            params(k)
        except AssertionError:
            bad.append(k)
    return not bad, f"{5001 - 29 - len(bad)}/{5001 - 29} values of k satisfy all five clauses" + (
        f"; failing k: {bad[:10]}" if bad else ""
    )


def _crossover(seed: int) -> tuple[bool, str]:
    below = [k for k in range(29, 5001) if thresholds(k).thm2 < thresholds(k).conj11]
    ok = below == list(range(36, 5001))
    return ok, f"thm2 < conj11 exactly for k in [{below[0]}, {below[-1]}] ({len(below)} values)"


def _theorem2(seed: int) -> tuple[bool, str]:
    a = audit_theorem2(29, 1, 100_000, seed)
    sym = sum(a.symbolic.values())
    return a.ok, (
        f"|V(G_1)|={a.order}, bound {a.bound}, structured max {a.structured_ratio}, "
        f"random max {a.random_ratio} over {a.samples} sets, {len(a.violations)} violations, "
        f"symbolic {sym}/{len(a.symbolic)}"
    )


def _connected_upto(n: int) -> Iterable[Graph]:
    for order in range(1, n + 1):
        yield from graphs_of_order(order, connected=True)


def _theorem1(seed: int) -> tuple[bool, str]:
    rep = theorem1_consistency_scan(_connected_upto(9), 3)
    return not rep.violations, (
        f"{rep.graphs} connected graphs, condition holds on {rep.condition_holds}, "
        f"{rep.without_factor} factor-free, {len(rep.violations)} violations"
    )


def _necessary_excess(g: Graph, k: int) -> int:
    table = np.zeros(g.n + 1, dtype=np.int64)
    for j in range(k):
        if 2 * j + 1 <= g.n:
            table[2 * j + 1] = k - j
    excess, _ = K.max_excess_exhaustive(K.adjacency_array(g.adj), g.n, table, k + 1, True)
    return int(excess)


def _necessary(seed: int) -> tuple[bool, str]:
    k = 3
    rng = np.random.default_rng(seed)
    graphs = [g for n in range(1, 9) for g in graphs_of_order(n)]
    nine = graphs_of_order(9)
    sample = [nine[i] for i in rng.choice(len(nine), 1000, replace=False)]
    sample += [random_graph(10, float(rng.uniform(0.2, 0.9)), rng) for _ in range(1000)]
    checked, bad = 0, []
    for g in graphs + sample:
        if exact_factor(g, k) is None:
            continue
        checked += 1
        if _necessary_excess(g, k) > 0:
            bad.append(g)
    return not bad, (
        f"{checked} graphs with a factor ({len(graphs)} exhaustive up to order 8 "
        f"plus 2000 sampled of order 9-10), {len(bad)} violations"
    )


def _prop21(seed: int) -> tuple[bool, str]:
    k = 3
    rng = np.random.default_rng(seed)
    passed, tried, bad = 0, 0, []
    while passed < 500:
        g = random_graph(int(rng.integers(1, 13)), float(rng.uniform(0.15, 0.9)), rng)
        tried += 1
        if find_bf_violator(g, k) is not None:
            continue
        passed += 1
        f = construct_factor_via_prop21(g, k)
        if not validate_factor(g, f):
            bad.append(g)
    return not bad, f"{passed} of {tried} random graphs pass the precheck, {len(bad)} invalid factors"


def _witness(seed: int) -> tuple[bool, str]:
    k, parts, ok = 3, [], True
    for m in (3, 4, 5):
        g = friendship_graph(m)
        if exact_factor(g, k) is not None:
            return False, f"F_{m} has a factor"
        w = witness_set(g, k)
        total = component_profile(g, w.x).small_odd_sum(k)
        rest = [v for v in range(g.n) if v not in w.x]
        good = len(w.x) >= 5 and 9 * total >= len(w.x) and g.is_independent(rest)
        if m == 3:
            good = good and w.ratio == Fraction(2, 5)
        ok = ok and good
        parts.append(f"F_{m}: |X|={len(w.x)} ratio {w.ratio}")
    return ok, ", ".join(parts)


def _largest_first_ear(g: Graph) -> int:
    """Order of the largest odd cycle whose complement has a perfect matching."""
    adj = K.adjacency_array(g.adj)
    nu = K.matching_numbers(adj, g.n)
    cyc = K.hamiltonian_cycle_masks(adj, g.n)
    full = (1 << g.n) - 1
    best = 0
    for s in np.flatnonzero(cyc):
        size = int(s).bit_count()
        rest = full & ~int(s)
        if size % 2 and size > best and 2 * nu[rest] == g.n - size:
            best = size
    return best


def _ear(seed: int) -> tuple[bool, str]:
    count, bad = 0, []
    for n in range(3, 10, 2):
        for g in graphs_of_order(n, connected=True):
            if not is_hypomatchable(g):
                continue
            count += 1
            d = compute_heights(g, find_odd_ear_decomposition(g))
            if decomposition_violations(g, d) or height_claim_violations(g, d):
                bad.append(g)
    rng = np.random.default_rng(seed)
    sampled, mismatch = 0, []
    while sampled < 300:
        n = int(rng.choice([3, 5, 7, 9, 11]))
        g = random_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        if not is_hypomatchable(g):
            continue
        sampled += 1
        d = improve_h1(g, find_odd_ear_decomposition(g))
        if decomposition_violations(g, d) or d.ears[0].order != _largest_first_ear(g):
            mismatch.append(g)
    return not bad and not mismatch, (
        f"{count} hypomatchable graphs of order 3-9, {len(bad)} failures; "
        f"first ear optimal on {sampled - len(mismatch)}/{sampled} sampled graphs up to order 11"
    )


def _matching_disagreements(g: Graph) -> list[str]:
    n = g.n
    adj = K.adjacency_array(g.adj)
    nu = K.matching_numbers(adj, n)
    full = (1 << n) - 1
    best, size, _ = K.surplus_exhaustive(adj, n, full)
    out = []
    if matching_number(g) != nu[full]:
        out.append("nu")
    if deficiency(g) != n - 2 * nu[full] or deficiency(g) != best:
        out.append("deficiency")
    hypo = n % 2 == 1 and all(2 * nu[full & ~(1 << v)] == n - 1 for v in range(n))
    if is_hypomatchable(g) != hypo:
        out.append("hypomatchable")
    b = barrier_set(g)
    if b.surplus != best or len(b.s) != size:
        out.append("barrier")
    if not validate_barrier(g, b).ok:
        out.append("lemma")
    return out


def _matching(seed: int) -> tuple[bool, str]:
    count, bad = 0, []
    for n in range(1, 10):
        for g in graphs_of_order(n):
            count += 1
            if _matching_disagreements(g):
                bad.append(g)
    rng = np.random.default_rng(seed)
    for _ in range(500):
        g = random_graph(int(rng.integers(1, 15)), float(rng.uniform(0.05, 0.8)), rng)
        if _matching_disagreements(g):
            bad.append(g)
    return not bad, f"{count} catalogue graphs plus 500 random up to order 14, {len(bad)} disagreements"


def _miniature(seed: int) -> tuple[bool, str]:
    entry = miniature_chain(1, 2, 1)
    ok = entry.get("solvers_agree", False) and entry["hamiltonian_path"] in ("yes", "no")
    if entry["hamiltonian_path"] == "no":
        ok = ok and entry["analogue_factor"] == "none"
    return ok, (
        f"miniature(1,2,1) order {entry['order']}: DP {entry['dp']}, "
        f"backtracking {entry['hamiltonian_path']}, analogue factor {entry['analogue_factor']}"
    )


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "lemma53", _lemma53),
    Criterion(2, "figure1", _figure1),
    Criterion(3, "lemma51", _lemma51),
    Criterion(4, "crossover", _crossover),
    Criterion(5, "theorem2", _theorem2, sampled=True),
    Criterion(6, "theorem1", _theorem1),
    Criterion(7, "necessary", _necessary, sampled=True),
    Criterion(8, "prop21", _prop21, sampled=True),
    Criterion(9, "witness", _witness),
    Criterion(10, "ear", _ear, sampled=True),
    Criterion(11, "matching", _matching, sampled=True),
    Criterion(12, "miniature", _miniature),
)


def format_line(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"[{status}] {r.number:2d} {r.name:<10} {r.seconds:8.2f}s  {r.detail}"


def select(only: Iterable[str] | None = None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    wanted = {str(o) for o in only}
    picked = [c for c in CRITERIA if c.name in wanted or str(c.number) in wanted]
    unknown = wanted - {c.name for c in picked} - {str(c.number) for c in picked}
    if unknown:
        raise ValueError(f"unknown criteria: {sorted(unknown)}")
    return picked


def run_one(c: Criterion, seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = c.check(seed)
    except Exception as exc:  # a crash is a failure, reported in the line
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    return CriterionResult(c.number, c.name, ok, time.perf_counter() - start, detail)


def run(only: Iterable[str] | None = None, seed: int = 0, echo: Callable[[str], None] | None = print
        ) -> list[CriterionResult]:
    results = []
    for c in select(only):
        r = run_one(c, seed)
        if echo:
            echo(format_line(r))
        results.append(r)
    return results
