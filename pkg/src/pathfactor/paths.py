"""Hamiltonian paths: budgeted backtracking and a subset-DP oracle."""

from __future__ import annotations

import numpy as np

from .graph import Graph, component_masks, members, popcount

__all__ = [
    "SearchBudgetExceeded",
    "hamiltonian_path",
    "hamiltonian_path_dp",
    "is_path_in",
]


class SearchBudgetExceeded(RuntimeError):
    """An exact search ran out of its node budget; the answer is unknown."""


def is_path_in(g: Graph, walk) -> bool:
    walk = list(walk)
    return len(set(walk)) == len(walk) and all(
        g.has_edge(a, b) for a, b in zip(walk, walk[1:])
    )


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetExceeded("node budget exhausted")


def hamiltonian_path(
    g: Graph, keep: int | None = None, budget: int = 10**7, counter: _Counter | None = None
) -> list[int] | None:
    """A Hamiltonian path of ``g[keep]`` or ``None`` if none exists.

    Depth-first extension of one end, trying successors with the fewest
    onward options first.  A branch is cut when the unvisited part is
    disconnected, when an unvisited vertex can no longer be entered and left,
    or when the (end, visited) state already failed.  Raises
    :class:`SearchBudgetExceeded` when more than ``budget`` nodes are needed.
    """
    adj = g.adj
    keep = g.full_mask if keep is None else keep
    size = popcount(keep)
    if size == 0:
        return None
    if size == 1:
        return members(keep)
    if len(component_masks(g, keep)) != 1:
        return None
    deg = {v: popcount(adj[v] & keep) for v in members(keep)}
    ones = [v for v, d in deg.items() if d == 1]
    if len(ones) > 2:
        return None
    starts = ones[:1] if ones else sorted(deg, key=lambda v: (deg[v], v))
    counter = counter or _Counter(budget)
    failed: set[tuple[int, int]] = set()

    def viable(end: int, rest: int) -> bool:
        if not adj[end] & rest:
            return False
        if len(component_masks(g, rest)) != 1:
            return False
        dead_ends = 0
        reach = rest | (1 << end)
        for w in members(rest):
            d = popcount(adj[w] & reach)
            if d <= 1:
                # w can only be the last vertex
                dead_ends += 1
                if dead_ends > 1:
                    return False
        return True

    def extend(path: list[int], visited: int) -> list[int] | None:
        rest = keep & ~visited
        if not rest:
            return path
        end = path[-1]
        if (end, visited) in failed:
            return None
        counter.tick()
        if not viable(end, rest):
            failed.add((end, visited))
            return None
        options = members(adj[end] & rest)
        options.sort(key=lambda w: (popcount(adj[w] & rest), w))
        for w in options:
            path.append(w)
            found = extend(path, visited | (1 << w))
            if found is not None:
                return found
            path.pop()
        failed.add((end, visited))
        return None

    for s in starts:
        found = extend([s], 1 << s)
        if found is not None:
            return list(found)
    return None


def hamiltonian_path_dp(g: Graph, max_order: int = 24) -> list[int] | None:
    """Exact Hamiltonian path by dynamic programming over vertex subsets.

    ``ends[S]`` holds the set of vertices at which a path covering exactly
    ``S`` can end; layers are processed by subset size.
    """
    n = g.n
    if n == 0:
        return None
    if n > max_order:
        raise ValueError(f"DP oracle limited to order {max_order}")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for v in range(n):
        pc += (masks >> v) & 1
    ends = np.zeros(size, dtype=np.int64)
    for v in range(n):
        ends[1 << v] = 1 << v
    adj = np.array(g.adj, dtype=np.int64)
    for layer_size in range(1, n):
        layer = masks[pc == layer_size]
        e = ends[layer]
        live = e != 0
        layer, e = layer[live], e[live]
        for u in range(n):
            bit = np.int64(1 << u)
            ok = ((layer & bit) == 0) & ((e & adj[u]) != 0)
            tgt = layer[ok] | bit
            ends[tgt] |= bit
    full = size - 1
    if ends[full] == 0:
        return None
    # walk back from the least admissible end vertex
    path = []
    cur = full
    v = members(int(ends[full]))[0]
    while True:
        path.append(v)
        cur &= ~(1 << v)
        if not cur:
            break
        cand = int(ends[cur]) & g.adj[v]
        v = members(cand)[0]
    return path[::-1]
