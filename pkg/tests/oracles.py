"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's algorithms: components and matchings
come from networkx, everything else is plain enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx


def nxg(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def component_orders(g, x) -> list[int]:
    h = nxg(g)
    h.remove_nodes_from(x)
    return sorted(len(c) for c in nx.connected_components(h))


def weighted_sum(g, x, k, weights=None) -> Fraction:
    weights = weights or [1] * k
    total = Fraction(0)
    for o in component_orders(g, x):
        if o % 2 and (o - 1) // 2 < k:
            total += Fraction(weights[(o - 1) // 2])
    return total


def subsets(n: int, empty: bool = False):
    for size in range(0 if empty else 1, n + 1):
        yield from combinations(range(n), size)


def max_ratio(g, k, weights=None) -> tuple[Fraction, tuple[int, ...]]:
    """Largest ratio, then smallest then lexicographically least witness."""
    best, wit = Fraction(-1), ()
    for x in subsets(g.n):
        r = weighted_sum(g, x, k, weights) / len(x)
        if r > best:
            best, wit = r, x
    return best, wit


def deficiency(g) -> int:
    return max(
        sum(1 for o in component_orders(g, x) if o % 2) - len(x) for x in subsets(g.n, empty=True)
    )


def matching_number(g) -> int:
    return len(nx.max_weight_matching(nxg(g), maxcardinality=True))


def is_hypomatchable(g) -> bool:
    if g.n % 2 == 0:
        return False
    h = nxg(g)
    for v in range(g.n):
        rest = h.copy()
        rest.remove_node(v)
        if 2 * len(nx.max_weight_matching(rest, maxcardinality=True)) != g.n - 1:
            return False
    return True


def _paths_through(adj, v, free, order):
    """All vertex sets of paths of the given order inside ``free`` that contain v."""
    out = set()

    def grow(path):
        if len(path) == order:
            if v in path:
                out.add(frozenset(path))
            return
        for w in adj[path[-1]]:
            if w in free and w not in path:
                grow(path + [w])

    for s in free:
        grow([s])
    return out


def has_factor(g, k) -> bool:
    """Path factor avoiding odd orders 3..2k-1, by plain recursion (k >= 1)."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    allowed = [o for o in range(2, g.n + 1) if o % 2 == 0 or o >= 2 * k + 1]
    memo: dict[frozenset, bool] = {}

    def rec(free: frozenset) -> bool:
        if not free:
            return True
        if free in memo:
            return memo[free]
        v = min(free)
        ok = any(
            rec(free - piece)
            for order in allowed
            if order <= len(free)
            for piece in _paths_through(adj, v, free, order)
        )
        memo[free] = ok
        return ok

    return rec(frozenset(range(g.n)))


def has_hamiltonian_path(g) -> bool:
    if g.n <= 1:
        return True
    return any(all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in permutations(range(g.n)))


def largest_odd_first_ear(g) -> int:
    """Order of the largest odd cycle C such that G - V(C) has a perfect matching."""
    h = nxg(g)
    best = 1 if g.n == 1 else 0
    for size in range(3, g.n + 1, 2):
        for s in combinations(range(g.n), size):
            rest = h.subgraph(set(range(g.n)) - set(s))
            if 2 * len(nx.max_weight_matching(rest, maxcardinality=True)) != g.n - size:
                continue
            first = s[0]
            for p in permutations(s[1:]):
                cyc = (first,) + p
                if p[0] < p[-1] and all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + (first,))):
                    best = size
                    break
            if best == size:
                break
    return best
