"""Odd ear decompositions, heights, and sparse-level witness sets.

Ears are numbered from 1.  The first ear stores its cycle as a cyclic vertex
order; every later ear stores its walk including the attachment vertices at
both ends (equal ends for a cycle ear).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Literal

from .factor import exact_factor
from .graph import Graph, component_profile, mask_of, members, popcount
from .matching import is_hypomatchable, perfect_matching

__all__ = [
    "Ear",
    "EarDecomposition",
    "NotHypomatchable",
    "ExtensionPreconditionViolated",
    "PreconditionViolated",
    "find_odd_ear_decomposition",
    "extend_decomposition",
    "decomposition_violations",
    "compute_heights",
    "height_claim_violations",
    "level_independence_check",
    "splice",
    "reroot",
    "improve_h1",
    "lexmax_decomposition",
    "WitnessSet",
    "witness_set",
    "IntermediateBounds",
    "intermediate_bounds",
    "admissible_sets",
]


class NotHypomatchable(ValueError):
    pass


class ExtensionPreconditionViolated(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Ear:
    kind: Literal["cycle", "path"]
    walk: tuple[int, ...]
    first: bool = False

    @property
    def new_vertices(self) -> tuple[int, ...]:
        return self.walk if self.first else self.walk[1:-1]

    @property
    def attachments(self) -> tuple[int, ...]:
        if self.first:
            return ()
        return (self.walk[0],) if self.kind == "cycle" else (self.walk[0], self.walk[-1])

    @property
    def order(self) -> int:
        return len(self.walk) if self.first or self.kind == "path" else len(self.walk) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        w = self.walk + (self.walk[0],) if self.first else self.walk
        return [(min(a, b), max(a, b)) for a, b in zip(w, w[1:])]


def _ear(walk) -> Ear:
    walk = tuple(walk)
    return Ear("cycle" if walk[0] == walk[-1] else "path", walk)


@dataclass(frozen=True)
class EarDecomposition:
    ears: tuple[Ear, ...]
    heights: dict[int, int] | None = None
    index_sets: dict[int, frozenset[int]] | None = None
    spine_paths: dict[int, tuple[int, ...]] | None = None
    anchors: dict[int, int] | None = None
    ear_heights: tuple[int, ...] | None = None
    level_ends: dict[int, int] | None = None

    @property
    def m(self) -> int:
        return len(self.ears)

    @property
    def sequence(self) -> tuple[int, ...]:
        return tuple(e.order for e in self.ears)

    def block(self, i: int) -> tuple[int, ...]:
        """Vertices first covered by ear ``i`` (1-based), in walk order."""
        return self.ears[i - 1].new_vertices

    def covered(self, upto: int) -> int:
        """Mask of vertices covered by ears 1..upto."""
        out = 0
        for e in self.ears[:upto]:
            out |= mask_of(e.new_vertices)
        return out

    def to_json(self) -> str:
        data: dict = {
            "ears": [{"kind": e.kind, "walk": list(e.walk)} for e in self.ears],
            "blocks": [list(e.new_vertices) for e in self.ears],
        }
        if self.heights is not None:
            data["heights"] = {str(v): h for v, h in sorted(self.heights.items())}
            data["ear_heights"] = list(self.ear_heights)
            data["I"] = {str(v): sorted(s) for v, s in sorted(self.index_sets.items())}
            data["R"] = {str(v): list(p) for v, p in sorted(self.spine_paths.items())}
            data["u"] = {str(i): u for i, u in sorted(self.level_ends.items())}
        return json.dumps(data, sort_keys=True)


# -- construction -------------------------------------------------------------


def _next_ear(g: Graph, covered: int, mate: dict[int, int]) -> tuple[list[int], int]:
    """One ear from two perfect matchings; returns (walk, new vertex mask).

    ``mate`` is a perfect matching of g - covered.  The walk starts at a
    covered vertex, enters x and follows the alternating path of the two
    matchings until it first returns to the covered set.
    """
    rest = g.full_mask & ~covered
    x = next(v for v in members(rest) if g.adj[v] & covered)
    start = members(g.adj[x] & covered)[0]
    other = perfect_matching(g, g.full_mask & ~(1 << x))
    if other is None:
        raise NotHypomatchable(f"G - {x} has no perfect matching")
    omate = {}
    for a, b in other.pairs:
        omate[a], omate[b] = b, a
    walk = [start, x]
    cur, use_first = x, True
    while True:
        cur = mate[cur] if use_first else omate[cur]
        walk.append(cur)
        if covered >> cur & 1:
            break
        use_first = not use_first
    return walk, mask_of(walk[1:-1])


def _matching_dict(g: Graph, keep: int) -> dict[int, int] | None:
    pm = perfect_matching(g, keep)
    if pm is None:
        return None
    out = {}
    for a, b in pm.pairs:
        out[a], out[b] = b, a
    return out


def extend_decomposition(g: Graph, partial: EarDecomposition | list[Ear]) -> EarDecomposition:
    """Complete a decomposition of an induced subgraph to one of ``g``."""
    ears = list(partial.ears if isinstance(partial, EarDecomposition) else partial)
    if ears:
        covered = EarDecomposition(tuple(ears)).covered(len(ears))
        mate = _matching_dict(g, g.full_mask & ~covered)
        if mate is None:
            raise ExtensionPreconditionViolated("the uncovered vertices have no perfect matching")
    else:
        if g.n < 3 or g.n % 2 == 0:
            raise NotHypomatchable("order must be odd and at least 3")
        # seed with the lowest vertex; its ear closes into an odd cycle
        covered = 1
        mate = _matching_dict(g, g.full_mask & ~1)
        if mate is None:
            raise NotHypomatchable("G - 0 has no perfect matching")
        walk, new = _next_ear(g, covered, mate)
        ears.append(Ear("cycle", tuple(walk[:-1]), first=True))
        covered |= new
    while covered != g.full_mask:
        walk, new = _next_ear(g, covered, mate)
        ears.append(_ear(walk))
        covered |= new
    return EarDecomposition(tuple(ears))


def find_odd_ear_decomposition(g: Graph) -> EarDecomposition:
    if g.n < 3 or not is_hypomatchable(g):
        raise NotHypomatchable("graph is not hypomatchable")
    return extend_decomposition(g, [])


def decomposition_violations(g: Graph, d: EarDecomposition) -> list[str]:
    """Check the four defining conditions; an empty list means valid."""
    problems = []
    if not d.ears:
        return ["no ears"]
    seen = 0
    used_edges: set[tuple[int, int]] = set()
    for i, e in enumerate(d.ears, start=1):
        if (i == 1) != e.first:
            problems.append(f"ear {i}: first-ear flag misplaced")
        n_edges = len(e.edges)
        if n_edges % 2 == 0 or n_edges < 3:
            problems.append(f"ear {i}: {n_edges} edges")
        for a, b in e.edges:
            if not g.has_edge(a, b):
                problems.append(f"ear {i}: {a}-{b} not an edge")
            if (a, b) in used_edges:
                problems.append(f"ear {i}: edge {a}-{b} reused")
            used_edges.add((a, b))
        new = e.new_vertices
        if len(set(new)) != len(new):
            problems.append(f"ear {i}: repeated vertex")
        if mask_of(new) & seen:
            problems.append(f"ear {i}: interior meets earlier ears")
        if i == 1:
            if e.kind != "cycle":
                problems.append("ear 1 is not a cycle")
        else:
            for a in e.attachments:
                if not seen >> a & 1:
                    problems.append(f"ear {i}: end {a} not on earlier ears")
            if e.kind == "path" and e.walk[0] == e.walk[-1]:
                problems.append(f"ear {i}: path ear with equal ends")
        seen |= mask_of(new)
    if seen != g.full_mask:
        problems.append(f"uncovered vertices {members(g.full_mask & ~seen)}")
    return problems


# -- heights ------------------------------------------------------------------


def compute_heights(g: Graph, d: EarDecomposition) -> EarDecomposition:
    ht: dict[int, int] = {}
    index: dict[int, frozenset[int]] = {}
    spine: dict[int, tuple[int, ...]] = {}
    anchor: dict[int, int] = {}
    ear_ht: list[int] = []
    ends: dict[int, int] = {}
    cyc = d.ears[0].walk
    for p, x in enumerate(cyc):
        ht[x] = 0
        index[x] = frozenset({1})
        spine[x] = cyc[p:] + cyc[:p]
    ear_ht.append(0)
    for i, e in enumerate(d.ears[1:], start=2):
        a, q, b = e.walk[0], e.walk[1:-1], e.walk[-1]
        for p, x in enumerate(q, start=1):
            # the odd-order way out of the ear
            if p % 2 == 0:
                arm = tuple(reversed(q[:p])) + (a,)
            else:
                arm = q[p - 1 :] + (b,)
            y = arm[-1]
            anchor[x] = y
            ht[x] = ht[y] + 1
            index[x] = index[y] | {i}
            spine[x] = arm[:-1] + spine[y]
        low = min(ht[x] for x in q)
        ear_ht.append(low)
        ends[i] = min((x for x in (q[0], q[-1]) if ht[x] == low), default=None)
    return replace(
        d,
        heights=ht,
        index_sets=index,
        spine_paths=spine,
        anchors=anchor,
        ear_heights=tuple(ear_ht),
        level_ends=ends,
    )


def _owner(d: EarDecomposition) -> dict[int, int]:
    return {v: i for i, e in enumerate(d.ears, start=1) for v in e.new_vertices}


def height_claim_violations(g: Graph, d: EarDecomposition) -> list[str]:
    """Check the six structural properties of heights, index sets and spines."""
    if d.heights is None:
        d = compute_heights(g, d)
    owner = _owner(d)
    blocks = {i: set(e.new_vertices) for i, e in enumerate(d.ears, start=1)}
    first = blocks[1]
    problems = []
    for x, i in owner.items():
        ix, r = d.index_sets[x], d.spine_paths[x]
        tag = f"vertex {x}"
        if not ({1, i} <= ix <= set(range(1, i + 1))):
            problems.append(f"{tag}: (i) I(x) = {sorted(ix)}")
        if d.heights[x] != len(ix) - 1:
            problems.append(f"{tag}: (ii) ht {d.heights[x]} vs |I|-1 = {len(ix) - 1}")
        for j in ix - {i}:
            if not d.heights[x] > d.ear_heights[j - 1]:
                problems.append(f"{tag}: (iii) fails for ear {j}")
        rset = set(r)
        for j, blk in blocks.items():
            if (j in ix) != bool(rset & blk):
                problems.append(f"{tag}: (iv) fails for ear {j}")
        if not first <= rset:
            problems.append(f"{tag}: (v) spine misses the first ear")
        for j in ix - {1}:
            inside = len(rset & blocks[j])
            outside = len(blocks[j] - rset)
            if inside % 2 or outside % 2 or inside < 2:
                problems.append(f"{tag}: (vi) fails for ear {j}")
        if r[0] != x or len(r) % 2 == 0 or len(rset) != len(r):
            problems.append(f"{tag}: spine is not an odd path from x")
        if any(not g.has_edge(a, b) for a, b in zip(r, r[1:])):
            problems.append(f"{tag}: spine uses a non-edge")
    return problems


def level_independence_check(
    g: Graph, d: EarDecomposition, h0: int
) -> tuple[int, int] | None:
    """``None`` if the level-``h0`` end vertices are independent, otherwise
    the first adjacent pair as ear indices (i, i') with i < i'."""
    if d.heights is None:
        d = compute_heights(g, d)
    level = [i for i in range(2, d.m + 1) if d.ear_heights[i - 1] == h0]
    for i, j in combinations(level, 2):
        if g.has_edge(d.level_ends[i], d.level_ends[j]):
            return i, j
    return None


# -- improvement moves --------------------------------------------------------


def splice(g: Graph, d: EarDecomposition, i: int, j: int) -> EarDecomposition:
    """Replace ear ``i`` by a longer ear through the adjacent end vertex of
    ear ``j`` (same height, i < j), then re-extend."""
    if d.heights is None:
        d = compute_heights(g, d)
    ui, uj = d.level_ends[i], d.level_ends[j]
    earlier = d.covered(i - 1)
    e = d.ears[i - 1]
    q = e.new_vertices
    # odd-order way from u_i through the whole block
    arm = q + (e.walk[-1],) if ui == q[0] else tuple(reversed(q)) + (e.walk[0],)
    r2 = []
    for v in d.spine_paths[uj]:
        r2.append(v)
        if earlier >> v & 1:
            break
    walk = tuple(reversed(arm)) + tuple(r2)
    return extend_decomposition(g, list(d.ears[: i - 1]) + [_ear(walk)])


def reroot(g: Graph, d: EarDecomposition, i: int) -> EarDecomposition | None:
    """A decomposition whose first cycle contains ear ``i``, if that cycle is
    longer than the current first ear."""
    e = d.ears[i - 1]
    earlier = d.covered(i - 1)
    if e.kind == "cycle":
        cycle = e.walk[:-1]
    else:
        a, b = e.walk[0], e.walk[-1]
        ma = _matching_dict(g, earlier & ~(1 << a))
        mb = _matching_dict(g, earlier & ~(1 << b))
        if ma is None or mb is None:
            return None
        # alternating a-b path of the two matchings
        path, cur, use_b = [a], a, True
        while cur != b:
            cur = mb[cur] if use_b else ma[cur]
            path.append(cur)
            use_b = not use_b
        cycle = tuple(path) + tuple(reversed(e.walk[1:-1]))
    if len(cycle) <= d.ears[0].order:
        return None
    return extend_decomposition(g, [Ear("cycle", tuple(cycle), first=True)])


def _local_improve(g: Graph, d: EarDecomposition) -> EarDecomposition:
    while True:
        for i in range(2, d.m + 1):
            better = reroot(g, d, i)
            if better is not None:
                d = better
                break
        else:
            d = compute_heights(g, d)
            top = max(d.ear_heights)
            for h0 in range(1, top + 1):
                clash = level_independence_check(g, d, h0)
                if clash is not None:
                    d = splice(g, d, *clash)
                    break
            else:
                return d


def improve_h1(g: Graph, d: EarDecomposition, exact_limit: int = 12) -> EarDecomposition:
    """Push the ear-order sequence towards its lexicographic maximum.

    Up to ``exact_limit`` vertices the maximum is found exactly; above it the
    two local moves (re-rooting at a longer cycle, splicing two adjacent
    same-height ends) are applied until neither improves the sequence.
    Each move strictly increases the sequence, so the loop terminates.
    """
    if g.n <= exact_limit:
        return compute_heights(g, lexmax_decomposition(g))
    return _local_improve(g, d)


# -- exact lexicographic maximum (small graphs) -------------------------------


class _Lexmax:
    def __init__(self, g: Graph):
        self.g = g
        n = g.n
        adj = g.adj
        # ends[S][y]: start vertices of Hamiltonian paths of g[S] ending at y
        self.ends = ends = [None] * (1 << n)
        for s in range(1, 1 << n):
            row = [0] * n
            if s & (s - 1) == 0:
                v = s.bit_length() - 1
                row[v] = s
            else:
                for y in members(s):
                    prev = s & ~(1 << y)
                    pr = ends[prev]
                    acc = 0
                    for z in members(adj[y] & prev):
                        acc |= pr[z]
                    row[y] = acc
            ends[s] = row
        self.pm: dict[int, bool] = {}
        self.memo: dict[int, tuple] = {}

    def matchable(self, mask: int) -> bool:
        if mask not in self.pm:
            self.pm[mask] = popcount(mask) % 2 == 0 and perfect_matching(self.g, mask) is not None
        return self.pm[mask]

    def ear_options(self, covered: int, q: int):
        """Best ear order using exactly block q, with a witness walk."""
        adj, row = self.g.adj, self.ends[q]
        best = None
        for y in members(q):
            for x in members(row[y]):
                if x >= y:
                    continue
                ax, ay = adj[x] & covered, adj[y] & covered
                if not ax or not ay:
                    continue
                if ax != ay or popcount(ax) > 1:
                    # two distinct attachments
                    a = (ax & -ax).bit_length() - 1
                    if ay & ~(1 << a):
                        b = members(ay & ~(1 << a))[0]
                    else:
                        b = a
                        a = members(ax & ~(1 << b))[0]
                    cand = (popcount(q) + 2, (a, x, y, b))
                else:
                    a = members(ax)[0]
                    cand = (popcount(q) + 1, (a, x, y, a))
                if best is None or cand[0] > best[0]:
                    best = cand
                    if cand[0] == popcount(q) + 2:
                        return best
        return best

    def best(self, covered: int) -> tuple:
        if covered == self.g.full_mask:
            return ()
        if covered in self.memo:
            return self.memo[covered][0]
        rest = self.g.full_mask & ~covered
        top, choice = None, None
        q = rest
        while q:
            if popcount(q) % 2 == 0 and self.matchable(rest & ~q):
                opt = self.ear_options(covered, q)
                if opt is not None:
                    seq = (opt[0],) + self.best(covered | q)
                    if top is None or seq > top:
                        top, choice = seq, (q, opt[1])
            q = (q - 1) & rest
        self.memo[covered] = (top, choice)
        return top

    def path(self, s: int, x: int, y: int) -> list[int]:
        out = [y]
        while s & (s - 1):
            s &= ~(1 << y)
            y = next(z for z in members(self.g.adj[y] & s) if self.ends[s][z] >> x & 1)
            out.append(y)
        return out[::-1]

    def cycle(self, s: int) -> tuple[int, ...] | None:
        """A Hamiltonian cycle of g[s] through its least vertex, or None."""
        v = (s & -s).bit_length() - 1
        row = self.ends[s]
        for y in members(self.g.adj[v] & s):
            if row[y] >> v & 1:
                return tuple(self.path(s, v, y))
        return None

    def solve(self) -> EarDecomposition:
        g = self.g
        top, pick = None, None
        for s in range(1, 1 << g.n):
            size = popcount(s)
            if size < 3 or size % 2 == 0 or not self.matchable(g.full_mask & ~s):
                continue
            if top is not None and size < top[0]:
                continue
            cyc = self.cycle(s)
            if cyc is None:
                continue
            seq = (size,) + self.best(s)
            if top is None or seq > top:
                top, pick = seq, (s, cyc)
        s, cyc = pick
        ears = [Ear("cycle", cyc, first=True)]
        covered = s
        while covered != g.full_mask:
            self.best(covered)
            q, (a, x, y, b) = self.memo[covered][1]
            ears.append(_ear((a,) + tuple(self.path(q, x, y)) + (b,)))
            covered |= q
        return EarDecomposition(tuple(ears))


def lexmax_decomposition(g: Graph, max_order: int = 14) -> EarDecomposition:
    """A decomposition whose ear-order sequence is lexicographically largest."""
    if g.n > max_order:
        raise ValueError(f"exact search limited to order {max_order}")
    if g.n < 3 or not is_hypomatchable(g):
        raise NotHypomatchable("graph is not hypomatchable")
    return _Lexmax(g).solve()


# -- witness sets -------------------------------------------------------------


@dataclass(frozen=True)
class WitnessSet:
    x: tuple[int, ...]
    level: int
    ratio: Fraction
    decomposition: EarDecomposition = field(repr=False, compare=False)

    def to_json(self) -> str:
        r = self.ratio
        return json.dumps(
            {"X": list(self.x), "level": self.level, "ratio": f"{r.numerator}/{r.denominator}"}
        )


def _check_factor_free(g: Graph, k: int, budget: int) -> None:
    if g.n < 3 or not is_hypomatchable(g):
        raise PreconditionViolated("graph is not hypomatchable")
    if g.n < 2 * k + 1:
        raise PreconditionViolated(f"order {g.n} is below 2k+1 = {2 * k + 1}")
    if exact_factor(g, k, budget) is not None:
        raise PreconditionViolated("graph has a factor")


def witness_set(g: Graph, k: int, budget: int = 10**7) -> WitnessSet:
    """Deletion set leaving one isolated vertex per ear of the busiest level."""
    _check_factor_free(g, k, budget)
    d = _local_improve(g, improve_h1(g, find_odd_ear_decomposition(g)))
    top = max(d.ear_heights)
    counts = {j: sum(1 for h in d.ear_heights[1:] if h == j) for j in range(1, top + 1)}
    level = min(j for j in counts if counts[j] == max(counts.values()))
    keep = {d.level_ends[i] for i in range(2, d.m + 1) if d.ear_heights[i - 1] == level}
    x = tuple(v for v in range(g.n) if v not in keep)
    total = component_profile(g, x).small_odd_sum(k)
    return WitnessSet(x, level, Fraction(total, len(x)), d)


@dataclass(frozen=True)
class IntermediateBounds:
    k: int
    l: int
    h: int
    a: tuple[int, ...]
    a_star: int
    blocks: tuple[tuple[int, int, int], ...]  # (ear, |Q(i)|, ht(H_i))
    busiest: int
    clauses: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def failed(self) -> list[str]:
        return [name for name, good in self.clauses.items() if not good]


def intermediate_bounds(
    g: Graph, d: EarDecomposition, k: int, budget: int = 10**7
) -> IntermediateBounds:
    _check_factor_free(g, k, budget)
    if d.heights is None:
        d = compute_heights(g, d)
    l = (d.ears[0].order - 1) // 2
    h = max(d.ear_heights)
    a = tuple(min(k - l - j, l) for j in range(1, h + 1))
    a_star = sum(a)
    blocks = tuple((i, len(d.block(i)), d.ear_heights[i - 1]) for i in range(2, d.m + 1))
    busiest = max((sum(1 for b in blocks if b[2] == j) for j in range(1, h + 1)), default=0)
    n_half = (g.n - 1) // 2
    clauses = {
        "block<=2l": all(size <= 2 * l for _, size, _ in blocks),
        "block<=2a": all(size <= 2 * a[ht - 1] for _, size, ht in blocks),
        "h<=k-l-1": h <= k - l - 1,
        "first+second<=2k-1": d.ears[0].order + (blocks[0][1] if blocks else 0) <= 2 * k - 1,
        "a*<=(k-2)(k-1)/2": 2 * a_star <= (k - 2) * (k - 1),
        "busiest>=(n-l)/a*": a_star > 0 and busiest * a_star >= n_half - l,
    }
    return IntermediateBounds(k, l, h, a, a_star, blocks, busiest, clauses)


def admissible_sets(g: Graph, d: EarDecomposition, k: int, budget: int = 10**7) -> list[tuple[int, ...]]:
    """Index sets containing 1 whose blocks induce a subgraph with a factor."""
    out = []
    others = range(2, d.m + 1)
    for size in range(d.m):
        for rest in combinations(others, size):
            idx = (1,) + rest
            keep = 0
            for i in idx:
                keep |= mask_of(d.block(i))
            if exact_factor(g, k, budget, keep) is not None:
                out.append(idx)
    return out
