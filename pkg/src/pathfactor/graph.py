"""Finite simple graphs on vertices ``0..n-1``.

Vertex sets are handled as Python ``int`` bitmasks internally (bit ``v`` set
means vertex ``v`` is a member); public functions accept any iterable of
vertices as well.  Graph values are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "Subgraph",
    "ComponentProfile",
    "GraphFormatError",
    "MalformedHeaderError",
    "WidthError",
    "VertexRangeError",
    "LoopError",
    "DuplicateEdgeError",
    "mask_of",
    "members",
    "popcount",
    "components",
    "component_masks",
    "component_profile",
    "delete",
    "induced",
    "join",
    "disjoint_union",
    "copies",
    "complement",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "empty_graph",
    "star_graph",
    "petersen_graph",
    "friendship_graph",
    "parse_graph6",
    "to_graph6",
    "parse_edge_list",
    "to_edge_list",
    "profile_json",
]


class GraphFormatError(ValueError):
    """Base class for serialization errors."""


class MalformedHeaderError(GraphFormatError):
    pass


class WidthError(GraphFormatError):
    """Body length or padding does not match the declared order."""


class VertexRangeError(GraphFormatError):
    pass


class LoopError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Graph:
    """Undirected simple graph with vertex labels ``0..n-1``."""

    __slots__ = ("n", "_adj", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key}")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._edges = tuple(sorted(seen))
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> Graph:
        """Build from symmetric bitmask rows (no validation beyond symmetry)."""
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in members(adj[u] >> (u + 1) << (u + 1))]
        return cls(n, edges)

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return members(self._adj[v])

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighborhood(self, vertices: Iterable[int] | int) -> int:
        """N_G(U) as a mask: neighbours of ``U`` outside ``U``."""
        m = mask_of(vertices)
        out = 0
        for v in members(m):
            out |= self._adj[v]
        return out & ~m

    def is_independent(self, vertices: Iterable[int] | int) -> bool:
        m = mask_of(vertices)
        return all(not (self._adj[v] & m) for v in members(m))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(component_masks(self)) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Subgraph:
    """A relabelled subgraph; ``labels[i]`` is the original label of vertex ``i``."""

    graph: Graph
    labels: tuple[int, ...]

    def to_original(self, vertices: Iterable[int]) -> list[int]:
        return sorted(self.labels[v] for v in vertices)

    def from_original(self, vertices: Iterable[int]) -> list[int]:
        index = {old: new for new, old in enumerate(self.labels)}
        return sorted(index[v] for v in vertices)


def component_masks(g: Graph, keep: int | None = None) -> list[int]:
    """Components of ``g[keep]`` as masks, ordered by minimum vertex."""
    adj = g.adj
    rest = g.full_mask if keep is None else keep
    out = []
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nb & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph, keep: Iterable[int] | int | None = None) -> list[tuple[int, ...]]:
    """Maximal connected vertex sets, each sorted, ordered by minimum vertex."""
    k = None if keep is None else mask_of(keep)
    return [tuple(members(c)) for c in component_masks(g, k)]


@dataclass(frozen=True)
class ComponentProfile:
    """Component statistics of ``G - X``.

    ``odd_counts[j]`` is the number of components of order ``2j+1``.
    """

    component_orders: tuple[int, ...]
    odd_counts: dict[int, int] = field(compare=False)
    total_components: int
    odd_components: int

    def count(self, order: int) -> int:
        """c_order: number of components with exactly ``order`` vertices."""
        return sum(1 for c in self.component_orders if c == order)

    def small_odd_sum(self, k: int, weights: Sequence | None = None):
        """Sum over 0 <= j <= k-1 of w_j * c_{2j+1}; unit weights by default."""
        if weights is None:
            return sum(self.odd_counts.get(j, 0) for j in range(k))
        return sum(weights[j] * self.odd_counts.get(j, 0) for j in range(k))


def component_profile(g: Graph, x: Iterable[int] | int = 0) -> ComponentProfile:
    xm = mask_of(x)
    if xm & ~g.full_mask:
        raise VertexRangeError("deleted set outside the vertex range")
    orders = tuple(popcount(c) for c in component_masks(g, g.full_mask & ~xm))
    odd: dict[int, int] = {}
    for c in orders:
        if c % 2:
            odd[(c - 1) // 2] = odd.get((c - 1) // 2, 0) + 1
    return ComponentProfile(orders, odd, len(orders), sum(odd.values()))


def profile_json(g: Graph, x: Iterable[int] | int = 0, k: int | None = None) -> str:
    xm = mask_of(x)
    prof = component_profile(g, xm)
    top = g.n if k is None else 2 * k - 1
    small = {str(o): prof.count(o) for o in range(1, top + 1, 2)}
    return json.dumps(
        {
            "n": g.n,
            "deleted": members(xm),
            "components": sorted(prof.component_orders),
            "c_odd_small": small,
        }
    )


def induced(g: Graph, s: Iterable[int] | int) -> Subgraph:
    keep = members(mask_of(s) & g.full_mask)
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Subgraph(Graph(len(keep), edges), tuple(keep))


def delete(g: Graph, x: Iterable[int] | int) -> Subgraph:
    return induced(g, g.full_mask & ~mask_of(x))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    """g1 + g2; vertices of ``g1`` keep their labels, ``g2`` is shifted by ``g1.n``."""
    base = disjoint_union([g1, g2])
    cross = [(u, g1.n + v) for u in range(g1.n) for v in range(g2.n)]
    return Graph(base.n, list(base.edges) + cross)


def copies(g: Graph, s: int) -> Graph:
    if s < 1:
        raise ValueError("number of copies must be at least 1")
    return disjoint_union([g] * s)


def complement(g: Graph) -> Graph:
    return Graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)])


# -- named graphs -------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def friendship_graph(t: int) -> Graph:
    """F_t: ``t`` triangles sharing the hub 0; triangle ``i`` is {0, 2i+1, 2i+2}."""
    edges = []
    for i in range(t):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * t + 1, edges)


# -- graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[i : i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise MalformedHeaderError("empty graph6 string")
    if any(not (63 <= ord(ch) <= 126) for ch in s):
        raise MalformedHeaderError("character outside the graph6 range 63..126")
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise MalformedHeaderError("truncated 8-byte order header")
        n, pos = 0, 8
        for ch in s[2:8]:
            n = (n << 6) | (ord(ch) - 63)
    else:
        if len(s) < 4:
            raise MalformedHeaderError("truncated 4-byte order header")
        n, pos = 0, 4
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
    body = s[pos:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise WidthError(f"expected {(nbits + 5) // 6} body bytes for n={n}, got {len(body)}")
    value = 0
    for ch in body:
        value = (value << 6) | (ord(ch) - 63)
    pad = len(body) * 6 - nbits
    if value & ((1 << pad) - 1):
        raise WidthError("non-zero padding bits")
    value >>= pad
    edges = []
    idx = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> idx & 1:
                edges.append((i, j))
            idx -= 1
    return Graph(n, edges)


# -- edge lists ---------------------------------------------------------------


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines, optionally preceded by an ``n <count>`` line.

    Without a header the order is ``n`` if given, else one more than the
    largest label.
    """
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if lines and lines[0].split()[0] == "n":
        head = lines.pop(0).split()
        if len(head) != 2 or not head[1].isdigit():
            raise MalformedHeaderError(f"bad header line {' '.join(head)!r}")
        n = int(head[1])
    pairs = []
    for ln in lines:
        parts = ln.split()
        if len(parts) != 2:
            raise WidthError(f"edge line must have two fields: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedHeaderError(f"non-integer vertex in {ln!r}") from exc
        pairs.append((u, v))
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    if any(min(p) < 0 for p in pairs):
        raise VertexRangeError("negative vertex label")
    return Graph(n, pairs)
