"""Exact {P2, P(2k+1)}-factor search and the barrier-based factor construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, component_masks, mask_of, members, popcount
from .matching import (
    barrier_set,
    bipartite_matching,
    contraction_neighborhoods,
    hall_violator,
    is_hypomatchable,
    perfect_matching,
)
from .paths import _Counter, hamiltonian_path

__all__ = [
    "Factor",
    "HypothesisViolated",
    "InfeasibleOrder",
    "BipartiteContraction",
    "exact_factor",
    "path_factor",
    "decompose_long_path",
    "b_factor_count",
    "bipartite_contraction",
    "construct_factor_via_prop21",
    "find_bf_violator",
    "factor_violations",
    "validate_factor",
    "articulation_points",
]


@dataclass(frozen=True)
class Factor:
    """A partition of the vertices into paths of order 2 or 2k+1."""

    k: int
    pieces: tuple[tuple[int, ...], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for p in self.pieces for a, b in zip(p, p[1:])]

    def orders(self) -> list[int]:
        return sorted(len(p) for p in self.pieces)

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "pieces": [list(p) for p in self.pieces]})

    @classmethod
    def from_json(cls, text: str) -> Factor:
        data = json.loads(text)
        return cls(int(data["k"]), tuple(tuple(p) for p in data["pieces"]))


class HypothesisViolated(ValueError):
    """Raised with a set X for which b_F(G - X) > |X|."""

    def __init__(self, x: list[int], b: int):
        super().__init__(f"b_F(G - X) = {b} > |X| = {len(x)} for X = {x}")
        self.x = x
        self.b = b


class InfeasibleOrder(ValueError):
    pass


def factor_violations(g: Graph, f: Factor) -> list[str]:
    problems = []
    seen: dict[int, int] = {}
    for idx, piece in enumerate(f.pieces):
        if len(piece) not in (2, 2 * f.k + 1):
            problems.append(f"piece {idx} has order {len(piece)}")
        for v in piece:
            if not 0 <= v < g.n:
                problems.append(f"piece {idx} has vertex {v} out of range")
            elif v in seen:
                problems.append(f"vertex {v} in pieces {seen[v]} and {idx}")
            else:
                seen[v] = idx
        for a, b in zip(piece, piece[1:]):
            if 0 <= a < g.n and 0 <= b < g.n and not g.has_edge(a, b):
                problems.append(f"piece {idx}: {a}-{b} is not an edge")
    missing = [v for v in range(g.n) if v not in seen]
    if missing:
        problems.append(f"uncovered vertices {missing}")
    return problems


def validate_factor(g: Graph, f: Factor) -> bool:
    return not factor_violations(g, f)


def decompose_long_path(order: int, k: int) -> list[int]:
    """Split a path of the given order into pieces of order 2 and 2k+1."""
    if order < 2 or (order % 2 and order < 2 * k + 1):
        raise InfeasibleOrder(f"a path of order {order} has no {{P2,P{2 * k + 1}}}-partition")
    if order % 2:
        return [2 * k + 1] + [2] * ((order - 2 * k - 1) // 2)
    return [2] * (order // 2)


def articulation_points(g: Graph, keep: int) -> list[int]:
    """Cut vertices of g[keep] (iterative Tarjan over bitmask rows)."""
    adj = g.adj
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    t = 0
    for root in members(keep):
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, members(adj[root] & keep))]
        while stack:
            v, parent, todo = stack[-1]
            if todo:
                w = todo.pop()
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, members(adj[w] & keep)))
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= disc[u]:
                        cuts.add(u)
        if root_children > 1:
            cuts.add(root)
    return sorted(cuts)


class _FactorSearch:
    """Memoised search over vertex masks of one host graph."""

    def __init__(self, g: Graph, k: int, counter: _Counter):
        self.g = g
        self.k = k
        self.long = 2 * k + 1
        self.counter = counter
        self.done: dict[int, tuple | None] = {}

    def solve(self, mask: int):
        if mask in self.done:
            return self.done[mask]
        comps = component_masks(self.g, mask)
        if len(comps) > 1:
            pieces: list = []
            for c in sorted(comps, key=popcount):
                sub = self.solve(c)
                if sub is None:
                    self.done[mask] = None
                    return None
                pieces.extend(sub)
            result = tuple(pieces)
        else:
            result = self._solve_connected(mask)
        self.done[mask] = result
        return result

    def _solve_connected(self, mask: int):
        g, size = self.g, popcount(mask)
        if size == 0:
            return ()
        if size % 2 and size < self.long:
            return None
        if size % 2 == 0:
            pm = perfect_matching(g, mask)
            if pm is not None:
                return tuple(pm.pairs)
            if size < 2 * self.long:
                return None
        if size == self.long:
            path = hamiltonian_path(g, mask, counter=self.counter)
            return None if path is None else (tuple(path),)
        self.counter.tick()
        # a piece through a cut vertex enters at most two of the pieces it separates
        for c in articulation_points(g, mask):
            stuck = 0
            for part in component_masks(g, mask & ~(1 << c)):
                if self.solve(part) is None:
                    stuck += 1
                    if stuck > 2:
                        return None
        adj = g.adj
        v = min(members(mask), key=lambda w: (popcount(adj[w] & mask), w))
        rest = mask & ~(1 << v)
        for u in members(adj[v] & rest):
            sub = self.solve(rest & ~(1 << u))
            if sub is not None:
                return ((v, u),) + sub
        tried: set[int] = set()
        for path in self._long_paths_through(v, mask):
            pm = mask_of(path)
            if pm in tried:
                continue
            tried.add(pm)
            sub = self.solve(mask & ~pm)
            if sub is not None:
                return (tuple(path),) + sub
        return None

    def _long_paths_through(self, v: int, mask: int):
        """Every path of order 2k+1 in g[mask] containing v, found once each:
        grow to the right first, then to the left."""
        adj, target, counter = self.g.adj, self.long, self.counter
        path = [v]

        def grow(used: int, right_open: bool):
            counter.tick()
            if len(path) == target:
                yield list(path)
                return
            if right_open:
                for w in members(adj[path[-1]] & mask & ~used):
                    path.append(w)
                    yield from grow(used | (1 << w), True)
                    path.pop()
            for w in members(adj[path[0]] & mask & ~used):
                path.insert(0, w)
                yield from grow(used | (1 << w), False)
                path.pop(0)

        yield from grow(1 << v, True)


def exact_factor(
    g: Graph, k: int, budget: int = 10**7, keep: int | None = None
) -> Factor | None:
    """A {P2, P(2k+1)}-factor of ``g[keep]``, or ``None`` if none exists.

    Raises :class:`SearchBudgetExceeded` when the answer is unknown within
    ``budget`` search nodes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    keep = g.full_mask if keep is None else keep
    pieces = _FactorSearch(g, k, _Counter(budget)).solve(keep)
    if pieces is None:
        return None
    return Factor(k, tuple(sorted(pieces)))


def path_factor(g: Graph, budget: int = 10**7) -> Factor | None:
    """A {P2, P3}-factor; one exists iff any path-factor does."""
    return exact_factor(g, 1, budget)


def _deficient(g: Graph, comp: int, k: int, cache: dict, budget: int) -> bool:
    if comp not in cache:
        cache[comp] = is_hypomatchable(g, comp) and exact_factor(g, k, budget, comp) is None
    return cache[comp]


def b_factor_count(
    g: Graph, x, k: int, budget: int = 10**7, cache: dict | None = None
) -> tuple[int, list[tuple[int, ...]]]:
    """Count hypomatchable components of g - x that have no factor."""
    cache = {} if cache is None else cache
    rest = g.full_mask & ~mask_of(x)
    bad = [c for c in component_masks(g, rest) if _deficient(g, c, k, cache, budget)]
    return len(bad), [tuple(members(c)) for c in bad]


def find_bf_violator(g: Graph, k: int, budget: int = 10**7) -> list[int] | None:
    """Least X (by size, then lexicographically) with b_F(G - X) > |X|, by
    exhaustive enumeration."""
    cache: dict[int, bool] = {}
    for size in range(g.n + 1):
        for x in combinations(range(g.n), size):
            b, _ = b_factor_count(g, x, k, budget, cache)
            if b > size:
                return list(x)
    return None


@dataclass
class BipartiteContraction:
    left: list[int]
    right: list[tuple[int, ...]]
    edges: list[tuple[int, int]]
    deficient: list[int] = field(default_factory=list)


def bipartite_contraction(g: Graph, s: int, k: int, budget: int = 10**7) -> BipartiteContraction:
    comps = component_masks(g, g.full_mask & ~s)
    left = members(s)
    nbrs = contraction_neighborhoods(g, s, comps)
    edges = [(u, j) for u, row in zip(left, nbrs) for j in members(row)]
    deficient = [
        j for j, c in enumerate(comps) if exact_factor(g, k, budget, c) is None
    ]
    return BipartiteContraction(left, [tuple(members(c)) for c in comps], edges, deficient)


def construct_factor_via_prop21(g: Graph, k: int, budget: int = 10**7) -> Factor:
    """Build a factor from a maximal barrier and a matching of its contraction.

    Raises :class:`HypothesisViolated` with a set X' = N_H(Y) when the
    deficient components cannot all be matched into the barrier.
    """
    s = mask_of(barrier_set(g).s)
    comps = component_masks(g, g.full_mask & ~s)
    left = members(s)
    own: dict[int, tuple | None] = {}
    for j, c in enumerate(comps):
        f = exact_factor(g, k, budget, c)
        own[j] = None if f is None else f.pieces
    t1 = [j for j in range(len(comps)) if own[j] is None]
    s_nbrs = contraction_neighborhoods(g, s, comps)  # per S-vertex, mask over comps
    comp_nbrs = [0] * len(comps)
    for i, row in enumerate(s_nbrs):
        for j in members(row):
            comp_nbrs[j] |= 1 << i

    # cover T1 first
    rows = [comp_nbrs[j] for j in t1]
    mate_of_row = bipartite_matching(rows, len(left))
    if any(m < 0 for m in mate_of_row):
        y = hall_violator(rows, len(left))
        ys = [t1[i] for i in members(y)]
        xs = sorted(left[i] for i in members(_union(comp_nbrs, ys)))
        # the unmatched components alone already outnumber X'; report the full count
        raise HypothesisViolated(xs, b_factor_count(g, xs, k, budget)[0])
    comp_mate = {t1[r]: m for r, m in enumerate(mate_of_row)}
    s_mate: dict[int, int] = {m: j for j, m in comp_mate.items()}

    # grow the matching along alternating paths until S is covered
    for start in range(len(left)):
        if start in s_mate:
            continue
        parent_comp: dict[int, int] = {}
        frontier, seen_s, end = [start], {start}, None
        while frontier and end is None:
            nxt = []
            for si in frontier:
                for j in members(s_nbrs[si]):
                    if j in parent_comp or comp_mate.get(j) == si:
                        continue
                    parent_comp[j] = si
                    if j not in comp_mate:
                        end = j
                        break
                    sj = comp_mate[j]
                    if sj not in seen_s:
                        seen_s.add(sj)
                        nxt.append(sj)
                if end is not None:
                    break
            frontier = nxt
        if end is None:
            raise RuntimeError("barrier contraction violates Hall's condition")
        j = end
        while True:
            si = parent_comp[j]
            prev = s_mate.get(si)
            comp_mate[j] = si
            s_mate[si] = j
            if si == start:
                break
            j = prev

    pieces: list[tuple[int, ...]] = []
    for j, c in enumerate(comps):
        if j in comp_mate:
            u = left[comp_mate[j]]
            pm = perfect_matching(g, c | (1 << u))
            if pm is None:
                raise RuntimeError("component is not hypomatchable")
            pieces.extend(pm.pairs)
        else:
            pieces.extend(own[j])
    return Factor(k, tuple(sorted(tuple(p) for p in pieces)))


def _union(rows: list[int], idx: list[int]) -> int:
    out = 0
    for j in idx:
        out |= rows[j]
    return out
