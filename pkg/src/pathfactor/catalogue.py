"""Catalogues of small graphs up to isomorphism, and random graph sources."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterator

import numpy as np
import pynauty

from .graph import Graph, members, parse_graph6, to_graph6

__all__ = [
    "KNOWN_COUNTS",
    "cache_dir",
    "graphs_of_order",
    "catalogue",
    "random_graph",
    "random_graphs",
]

# number of graphs up to isomorphism on n vertices
KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}


def cache_dir() -> Path:
    root = os.environ.get("PATHFACTOR_CACHE")
    path = Path(root) if root else Path.home() / ".cache" / "pathfactor"
    path.mkdir(parents=True, exist_ok=True)
    return path


def _certificate(n: int, adj: list[int]) -> bytes:
    g = pynauty.Graph(n, directed=False, adjacency_dict={v: members(adj[v]) for v in range(n)})
    return pynauty.certificate(g)


def _augment(smaller: list[Graph], n: int) -> list[Graph]:
    """Every graph on n vertices arises from one on n-1 vertices by adding a
    vertex with some neighbourhood; keep one representative per class."""
    seen: dict[bytes, Graph] = {}
    for h in smaller:
        base = list(h.adj) + [0]
        for nb in range(1 << (n - 1)):
            adj = [row | ((nb >> v & 1) << (n - 1)) for v, row in enumerate(base[:-1])]
            adj.append(nb)
            cert = _certificate(n, adj)
            if cert not in seen:
                seen[cert] = Graph.from_adjacency(adj)
    return list(seen.values())


def graphs_of_order(n: int, connected: bool = False, use_cache: bool = True) -> list[Graph]:
    """All graphs on n vertices up to isomorphism (graph6 cached on disk)."""
    if n < 0:
        raise ValueError("order must be non-negative")
    path = cache_dir() / f"graphs{n}.g6" if use_cache else None
    if path is not None and path.exists():
        out = [parse_graph6(line) for line in path.read_text().split()]
    elif n == 0:
        out = [Graph(0)]
    else:
        out = _augment(graphs_of_order(n - 1, use_cache=use_cache), n)
        out.sort(key=to_graph6)
        if path is not None:
            tmp = path.with_suffix(".tmp")
            tmp.write_text("".join(to_graph6(g) + "\n" for g in out))
            tmp.replace(path)
    if connected:
        out = [g for g in out if g.is_connected()]
    return out


def catalogue(max_order: int, min_order: int = 1, connected: bool = False) -> Iterator[Graph]:
    for n in range(min_order, max_order + 1):
        yield from graphs_of_order(n, connected)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return Graph(n, zip(iu[0][keep].tolist(), iu[1][keep].tolist()))


def random_graphs(
    count: int, orders: tuple[int, int], seed: int = 0, p_range: tuple[float, float] = (0.1, 0.8)
) -> Iterator[Graph]:
    """``count`` random graphs with uniform order and edge density."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(orders[0], orders[1] + 1))
        yield random_graph(n, float(rng.uniform(*p_range)), rng)
