"""Maximum matchings, hypomatchability and maximal Tutte barriers."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from . import _kernels
from .graph import Graph, component_masks, mask_of, members, popcount

__all__ = [
    "Matching",
    "BarrierSet",
    "BarrierCheck",
    "max_matching",
    "mate_array",
    "matching_number",
    "has_perfect_matching",
    "perfect_matching",
    "deficiency",
    "is_hypomatchable",
    "gallai_edmonds",
    "surplus",
    "barrier_set",
    "validate_barrier",
    "bipartite_matching",
    "hall_violator",
]


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def vertices(self) -> int:
        return mask_of(v for e in self.pairs for v in e)

    def is_valid_for(self, g: Graph) -> bool:
        used = 0
        for u, v in self.pairs:
            if not g.has_edge(u, v) or (used >> u & 1) or (used >> v & 1):
                return False
            used |= (1 << u) | (1 << v)
        return True


# -- Edmonds' blossom algorithm ----------------------------------------------


def _augment_from(nbrs: list[list[int]], match: list[int], root: int) -> bool:
    """Search for an augmenting path from the exposed vertex ``root``; flip it
    into ``match`` if found."""
    n = len(match)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in nbrs[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark(v, cur, to, blossom)
                mark(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def _neighbor_lists(g: Graph, keep: int) -> list[list[int]]:
    adj = g.adj
    return [members(adj[v] & keep) if keep >> v & 1 else [] for v in range(g.n)]


def mate_array(g: Graph, keep: int | None = None) -> list[int]:
    """Maximum matching of ``g[keep]`` as a mate array (-1 = exposed or absent)."""
    keep = g.full_mask if keep is None else keep
    nbrs = _neighbor_lists(g, keep)
    match = [-1] * g.n
    for v in members(keep):
        if match[v] == -1:
            for u in nbrs[v]:
                if match[u] == -1:
                    match[v], match[u] = u, v
                    break
    for v in members(keep):
        if match[v] == -1:
            _augment_from(nbrs, match, v)
    return match


def _pairs(match: list[int]) -> tuple[tuple[int, int], ...]:
    return tuple((v, u) for v, u in enumerate(match) if u > v)


def max_matching(g: Graph, keep: Iterable[int] | int | None = None) -> Matching:
    k = None if keep is None else mask_of(keep)
    return Matching(_pairs(mate_array(g, k)))


def matching_number(g: Graph, keep: int | None = None) -> int:
    return sum(1 for v, u in enumerate(mate_array(g, keep)) if u > v)


def perfect_matching(g: Graph, keep: Iterable[int] | int | None = None) -> Matching | None:
    """A perfect matching of ``g[keep]``, or ``None``."""
    k = g.full_mask if keep is None else mask_of(keep)
    if popcount(k) % 2:
        return None
    match = mate_array(g, k)
    if any(match[v] == -1 for v in members(k)):
        return None
    return Matching(_pairs(match))


def has_perfect_matching(g: Graph, keep: Iterable[int] | int | None = None) -> bool:
    return perfect_matching(g, keep) is not None


def deficiency(g: Graph, keep: int | None = None) -> int:
    """max_X c_odd(G-X) - |X|, computed as n - 2*nu (Tutte-Berge)."""
    k = g.full_mask if keep is None else keep
    return popcount(k) - 2 * matching_number(g, k)


def surplus(g: Graph, s: Iterable[int] | int, keep: int | None = None) -> int:
    """c_odd(G[keep] - S) - |S|."""
    k = g.full_mask if keep is None else keep
    sm = mask_of(s) & k
    odd = sum(1 for c in component_masks(g, k & ~sm) if popcount(c) % 2)
    return odd - popcount(sm)


def _missable(g: Graph, keep: int, match: list[int]) -> int:
    """Vertices of ``g[keep]`` missed by at least one maximum matching."""
    d = 0
    for v in members(keep):
        p = match[v]
        if p == -1:
            d |= 1 << v
            continue
        trial = list(match)
        trial[v] = trial[p] = -1
        nbrs = _neighbor_lists(g, keep & ~(1 << v))
        if _augment_from(nbrs, trial, p):
            d |= 1 << v
    return d


def is_hypomatchable(g: Graph, keep: Iterable[int] | int | None = None) -> bool:
    """True iff the order is odd and deleting any vertex leaves a perfect matching."""
    k = g.full_mask if keep is None else mask_of(keep)
    size = popcount(k)
    if size % 2 == 0:
        return False
    if size == 1:
        return True
    match = mate_array(g, k)
    if sum(1 for v in members(k) if match[v] == -1) != 1:
        return False
    return _missable(g, k, match) == k


def gallai_edmonds(g: Graph, keep: int | None = None) -> tuple[int, int, int]:
    """(D, A, C) masks of the Gallai-Edmonds structure of ``g[keep]``."""
    k = g.full_mask if keep is None else keep
    match = mate_array(g, k)
    d = _missable(g, k, match)
    a = g.neighborhood(d) & k
    return d, a, k & ~d & ~a


@dataclass(frozen=True)
class BarrierSet:
    s: tuple[int, ...]
    surplus: int


def _maximal_barrier_extension(g: Graph, s: int, keep: int) -> int:
    """Grow a barrier of ``g[keep]`` until no proper superset is a barrier.

    An even component gives up its least vertex; an odd component C that is
    not hypomatchable gives up the least v with C - v unmatchable together
    with the Gallai-Edmonds set A(C - v).  Both moves keep the surplus.  The
    loop stops once every component is odd and hypomatchable, at which point
    every proper superset loses surplus.
    """
    while True:
        grown = False
        for c in component_masks(g, keep & ~s):
            if popcount(c) % 2 == 0:
                s |= c & -c
                grown = True
                break
            if is_hypomatchable(g, c):
                continue
            for v in members(c):
                rest = c & ~(1 << v)
                if not has_perfect_matching(g, rest):
                    _, a, _ = gallai_edmonds(g, rest)
                    s |= (1 << v) | a
                    grown = True
                    break
            break
        if not grown:
            return s


def barrier_set(g: Graph, exact_limit: int = 20) -> BarrierSet:
    """A set S maximising c_odd(G-S) - |S| and, subject to that, |S|.

    Every maximal maximiser contains the Gallai-Edmonds set A and avoids D,
    and the remaining part G[C] has a perfect matching, so S splits as A plus
    a largest barrier of each component of G[C].  Components with at most
    ``exact_limit`` vertices are searched exhaustively (ties to the
    lexicographically least set); larger ones get an inclusion-maximal
    barrier, which need not be of maximum size.
    """
    d, a, c = gallai_edmonds(g)
    s = a
    adj = None
    for comp in component_masks(g, c):
        if popcount(comp) <= exact_limit and g.n <= _kernels.MAX_BITS:
            if adj is None:
                adj = _kernels.adjacency_array(g.adj)
            _, _, best = _kernels.surplus_exhaustive(adj, g.n, comp)
            s |= int(best)
        else:
            s |= _maximal_barrier_extension(g, 0, comp)
    s = _maximal_barrier_extension(g, s, g.full_mask)
    return BarrierSet(tuple(members(s)), surplus(g, s))


# -- bipartite matchings and Hall's condition ---------------------------------


def bipartite_matching(left_nbrs: list[int], right_size: int) -> list[int]:
    """Kuhn's algorithm; ``left_nbrs[i]`` is a mask over right vertices.

    Returns ``mate[i]`` (right index or -1) for each left vertex.
    """
    right_mate = [-1] * right_size
    left_mate = [-1] * len(left_nbrs)

    def try_left(i: int, visited: list[bool]) -> bool:
        for j in members(left_nbrs[i]):
            if visited[j]:
                continue
            visited[j] = True
            if right_mate[j] == -1 or try_left(right_mate[j], visited):
                right_mate[j] = i
                left_mate[i] = j
                return True
        return False

    for i in range(len(left_nbrs)):
        try_left(i, [False] * right_size)
    return left_mate


def hall_violator(left_nbrs: list[int], right_size: int) -> int | None:
    """A set Y of left vertices (mask) with |N(Y)| < |Y|, or ``None``."""
    mate = bipartite_matching(left_nbrs, right_size)
    right_mate = [-1] * right_size
    for i, j in enumerate(mate):
        if j != -1:
            right_mate[j] = i
    for i, j in enumerate(mate):
        if j != -1:
            continue
        # left vertices reachable by alternating paths from the exposed i
        reach = 1 << i
        frontier = [i]
        while frontier:
            nxt = []
            for x in frontier:
                for r in members(left_nbrs[x]):
                    y = right_mate[r]
                    if y != -1 and not reach >> y & 1:
                        reach |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return reach
    return None


@dataclass(frozen=True)
class BarrierCheck:
    """Outcome of checking the three barrier properties on ``S``."""

    s: tuple[int, ...]
    surplus: int
    component_orders: tuple[int, ...]
    component_hypomatchable: tuple[bool, ...]
    all_odd: bool
    all_hypomatchable: bool
    hall_ok: bool
    failures: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.all_odd and self.all_hypomatchable and self.hall_ok

    def to_json(self) -> str:
        comps = [
            {"order": o, "hypomatchable": h}
            for o, h in zip(self.component_orders, self.component_hypomatchable)
        ]
        return json.dumps(
            {"S": list(self.s), "surplus": self.surplus, "components": comps, "hall_ok": self.hall_ok}
        )


def contraction_neighborhoods(g: Graph, s: int, comps: list[int]) -> list[int]:
    """For each vertex of ``S`` (in label order), the mask of adjacent components."""
    out = []
    for u in members(s):
        row = g.adj[u]
        out.append(mask_of(i for i, c in enumerate(comps) if row & c))
    return out


def validate_barrier(g: Graph, b: BarrierSet, exhaustive_limit: int = 20) -> BarrierCheck:
    s = mask_of(b.s)
    comps = component_masks(g, g.full_mask & ~s)
    orders = tuple(popcount(c) for c in comps)
    hypo = tuple(is_hypomatchable(g, c) for c in comps)
    failures: list[tuple[str, tuple[int, ...]]] = []
    for c, o in zip(comps, orders):
        if o % 2 == 0:
            failures.append(("even-component", tuple(members(c))))
    for c, h in zip(comps, hypo):
        if not h:
            failures.append(("not-hypomatchable", tuple(members(c))))
    nbrs = contraction_neighborhoods(g, s, comps)
    s_list = members(s)
    hall_ok = True
    if len(s_list) <= exhaustive_limit:
        # subset neighbourhood unions via lowest-bit recurrence
        union = [0] * (1 << len(s_list))
        for x in range(1, 1 << len(s_list)):
            low = x & -x
            union[x] = union[x ^ low] | nbrs[low.bit_length() - 1]
            if popcount(union[x]) < popcount(x):
                hall_ok = False
                failures.append(("hall", tuple(s_list[i] for i in members(x))))
                break
    else:
        y = hall_violator(nbrs, len(comps))
        if y is not None:
            hall_ok = False
            failures.append(("hall", tuple(s_list[i] for i in members(y))))
    if surplus(g, s) != b.surplus:
        failures.append(("surplus-mismatch", tuple(s_list)))
    return BarrierCheck(
        tuple(s_list),
        b.surplus,
        orders,
        hypo,
        all(o % 2 for o in orders),
        all(hypo),
        hall_ok,
        failures,
    )
