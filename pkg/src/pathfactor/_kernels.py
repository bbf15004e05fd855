"""Compiled inner loops for exhaustive subset enumeration.

Bitmask kernels take adjacency rows as an ``int64`` array and work for
graphs of order at most 62.  The CSR kernel handles any order.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_BITS = 62


def adjacency_array(adj) -> np.ndarray:
    if len(adj) > MAX_BITS:
        raise ValueError(f"bitmask kernels support at most {MAX_BITS} vertices")
    return np.array(adj, dtype=np.int64)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lex_less(a, b):
    # equal-size sets: a precedes b iff the least element of a^b lies in a
    d = a ^ b
    return (a & (d & -d)) != 0


@njit(cache=True)
def _weighted_components(adj, n, keep, weight_by_order):
    total = 0
    rest = keep
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nb = 0
            for v in range(n):
                if (frontier >> v) & 1:
                    nb |= adj[v]
            frontier = nb & rest & ~comp
            comp |= frontier
        total += weight_by_order[_popcount(comp)]
        rest &= ~comp
    return total


@njit(cache=True)
def weighted_sum(adj, n, keep, weight_by_order):
    return _weighted_components(adj, n, keep, weight_by_order)


@njit(cache=True)
def max_ratio_exhaustive(adj, n, weight_by_order):
    """Maximise sum(weight[|C|]) / |X| over non-empty X.

    Ties go to the smaller |X|, then to the lexicographically least X.
    Returns (numerator, |X|, mask).
    """
    full = (np.int64(1) << n) - 1
    best_num = np.int64(-1)
    best_size = np.int64(1)
    best_mask = np.int64(0)
    for x in range(1, full + 1):
        s = _weighted_components(adj, n, full & ~x, weight_by_order)
        size = _popcount(x)
        lhs = s * best_size
        rhs = best_num * size
        if lhs > rhs or (
            lhs == rhs and (size < best_size or (size == best_size and _lex_less(x, best_mask)))
        ):
            best_num = s
            best_size = size
            best_mask = x
    return best_num, best_size, best_mask


@njit(cache=True)
def max_excess_exhaustive(adj, n, weight_by_order, rhs_per_vertex, include_empty):
    """Maximise sum(weight[|C|]) - rhs * |X|; returns (excess, mask) with the
    smallest, then lexicographically least, maximiser."""
    full = (np.int64(1) << n) - 1
    best = np.int64(-(1 << 62))
    best_mask = np.int64(0)
    best_size = np.int64(n + 1)
    start = 0 if include_empty else 1
    for x in range(start, full + 1):
        size = _popcount(x)
        e = _weighted_components(adj, n, full & ~x, weight_by_order) - rhs_per_vertex * size
        if e > best or (
            e == best and (size < best_size or (size == best_size and _lex_less(x, best_mask)))
        ):
            best = e
            best_mask = x
            best_size = size
    return best, best_mask


@njit(cache=True)
def surplus_exhaustive(adj, n, within):
    """Tutte-Berge surplus c_odd(G[within] - X) - |X| over all X within ``within``.

    Returns (max surplus, largest maximiser size, lexicographically least
    maximiser of that size).
    """
    w = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1, 2):
        w[i] = 1
    # enumerate submasks of `within`
    best = np.int64(-(1 << 62))
    best_size = np.int64(-1)
    best_mask = np.int64(0)
    x = np.int64(0)
    while True:
        size = _popcount(x)
        s = _weighted_components(adj, n, within & ~x, w) - size
        if s > best or (
            s == best and (size > best_size or (size == best_size and _lex_less(x, best_mask)))
        ):
            best = s
            best_size = size
            best_mask = x
        if x == within:
            break
        x = (x - within) & within
    return best, best_size, best_mask


@njit(cache=True)
def csr_weighted_sums(indptr, indices, n, deleted, weight_by_order):
    """Weighted component sums for each row of the boolean matrix ``deleted``."""
    samples = deleted.shape[0]
    out = np.zeros(samples, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.zeros(n, dtype=np.int64)
    for s in range(samples):
        for v in range(n):
            seen[v] = deleted[s, v]
        total = 0
        for root in range(n):
            if seen[root]:
                continue
            seen[root] = True
            top = 0
            stack[0] = root
            top = 1
            size = 0
            while top:
                top -= 1
                v = stack[top]
                size += 1
                for p in range(indptr[v], indptr[v + 1]):
                    u = indices[p]
                    if not seen[u]:
                        seen[u] = True
                        stack[top] = u
                        top += 1
            total += weight_by_order[size]
        out[s] = total
    return out


@njit(cache=True)
def matching_numbers(adj, n):
    """nu(G[mask]) for every mask, by matching or skipping the lowest vertex."""
    size = np.int64(1) << n
    nu = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        low = mask & -mask
        v = _popcount(low - 1)
        rest = mask ^ low
        best = nu[rest]
        nbrs = adj[v] & rest
        while nbrs:
            b = nbrs & -nbrs
            cand = nu[rest ^ b] + 1
            if cand > best:
                best = cand
            nbrs ^= b
        nu[mask] = best
    return nu


@njit(cache=True)
def hamiltonian_cycle_masks(adj, n):
    """Whether G[mask] has a Hamiltonian cycle, for every mask of order >= 3.

    ends[mask] holds the vertices reachable by a path that starts at the
    lowest vertex of ``mask`` and covers it exactly.
    """
    size = np.int64(1) << n
    ends = np.zeros(size, dtype=np.int64)
    cyc = np.zeros(size, dtype=np.bool_)
    for v in range(n):
        ends[np.int64(1) << v] = np.int64(1) << v
    for mask in range(1, size):
        e = ends[mask]
        if e == 0:
            continue
        low = mask & -mask
        start = _popcount(low - 1)
        rest = e
        while rest:
            b = rest & -rest
            y = _popcount(b - 1)
            rest ^= b
            if _popcount(mask) >= 3 and (adj[y] >> start) & 1:
                cyc[mask] = True
            # extend by a neighbour above the start vertex
            ext = adj[y] & ~mask & ~(low - 1) & ~low
            while ext:
                c = ext & -ext
                ends[mask | c] |= c
                ext ^= c
    return cyc
