"""The extremal family K_n + (2n+1)Q built from copies of an 8-vertex gadget.

Q = L + T, where T consists of m copies of the gadget H and r extra
vertices R, with the gadget terminals U = {u_i, v_i} and R forming a clique.
For k >= 29 the parameters (l, m, r) are forced by k; ``miniature`` builds
the same shape for arbitrary small parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _kernels as K
from .factor import articulation_points, exact_factor
from .graph import Graph, component_masks, component_profile, members, popcount
from .paths import SearchBudgetExceeded, hamiltonian_path, hamiltonian_path_dp
from .toughness import _csr, fraction_str, thresholds

__all__ = [
    "H_LABELS",
    "H_EDGES",
    "ExtremalParams",
    "Role",
    "LabeledExtremalGraph",
    "params",
    "build_H",
    "gadget_report",
    "miniature",
    "build_Q",
    "g_analogue",
    "build_Gn",
    "verify_lemma53",
    "HamResult",
    "hamiltonian_path_exists",
    "copy_profile",
    "symbolic_chain",
    "audit_theorem2",
    "audit_no_factor",
]

H_LABELS = ("u", "v", "t", "b", "c", "d", "e", "f")
# outer 8-cycle u-c-t-d-v-e-b-f-u and inner 4-cycle c-d-e-f
_H_NAMED = [
    ("u", "c"), ("c", "t"), ("t", "d"), ("d", "v"),
    ("v", "e"), ("e", "b"), ("b", "f"), ("f", "u"),
    ("c", "d"), ("d", "e"), ("e", "f"), ("f", "c"),
]
H_EDGES = tuple((H_LABELS.index(a), H_LABELS.index(b)) for a, b in _H_NAMED)


@dataclass(frozen=True)
class ExtremalParams:
    k: int
    l: int
    m: int
    r: int
    n: int = 1

    def clauses(self) -> dict[str, bool]:
        k, l, m, r = self.k, self.l, self.m, self.r
        return {
            "order": 2 * k + 1 == l + 8 * m + r,
            "l-range": Fraction(2 * k - 56, 17) <= l <= Fraction(2 * k - 24, 17),
            "m-range": Fraction(16 * k - 39, 68) <= m <= Fraction(32 * k + 73, 136),
            "m>=2l+3": m >= 2 * l + 3,
            "r-odd-small": r in (1, 3, 5, 7),
        }

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "l": self.l, "m": self.m, "r": self.r, "n": self.n})


def params(k: int, n: int = 1) -> ExtremalParams:
    if k < 29:
        raise ValueError("the family needs k >= 29")
    if n < 1:
        raise ValueError("n must be positive")
    l = 2 * ((k - 12) // 17)
    m = (2 * k - l + 1) // 8
    p = ExtremalParams(k, l, m, 2 * k + 1 - l - 8 * m, n)
    bad = [name for name, ok in p.clauses().items() if not ok]
    if bad:
        raise AssertionError(f"parameter clauses fail for k={k}: {bad}")
    return p


@dataclass(frozen=True)
class Role:
    kind: str  # "L", "H", "R" or "Q0"
    copy: int = 0  # which copy of Q (0 for a standalone Q or for Q0)
    block: int = -1  # gadget index inside its copy
    label: str = ""  # gadget vertex name


@dataclass(frozen=True)
class LabeledExtremalGraph:
    graph: Graph
    roles: tuple[Role, ...]
    l: int = 0
    m: int = 0
    r: int = 0
    copies: int = 0

    def select(self, kind: str | None = None, copy: int | None = None,
               block: int | None = None, label: str | None = None) -> list[int]:
        out = []
        for v, role in enumerate(self.roles):
            if kind is not None and role.kind != kind:
                continue
            if copy is not None and role.copy != copy:
                continue
            if block is not None and role.block != block:
                continue
            if label is not None and role.label != label:
                continue
            out.append(v)
        return out

    def terminals(self, copy: int | None = None) -> list[int]:
        return [v for v in self.select("H", copy) if self.roles[v].label in ("u", "v")]


def build_H() -> LabeledExtremalGraph:
    roles = tuple(Role("H", 0, 0, name) for name in H_LABELS)
    return LabeledExtremalGraph(Graph(8, H_EDGES), roles, 0, 1, 0)


def _is_2connected(g: Graph, keep: int) -> bool:
    return (
        popcount(keep) >= 3
        and len(component_masks(g, keep)) == 1
        and not articulation_points(g, keep)
    )


def _independence_number(g: Graph, keep: int) -> int:
    best = 0
    verts = members(keep)
    for size in range(len(verts) + 1):
        if any(g.is_independent(s) for s in combinations(verts, size)):
            best = size
        else:
            break
    return best


def gadget_report() -> dict:
    """Structural facts about the gadget that its use depends on."""
    h = build_H().graph
    inner = h.full_mask & ~0b11
    return {
        "order": h.n,
        "edges": h.m,
        "degrees": sorted(h.degrees()),
        "inner_2connected": _is_2connected(h, inner),
        "inner_independence": _independence_number(h, inner),
    }


def miniature(l: int, m: int, r: int, copy: int = 0) -> LabeledExtremalGraph:
    """L + T for arbitrary l >= 0, m >= 1, r >= 0."""
    if l < 0 or m < 1 or r < 0:
        raise ValueError("need l >= 0, m >= 1, r >= 0")
    roles: list[Role] = [Role("L", copy) for _ in range(l)]
    edges: list[tuple[int, int]] = []
    clique: list[int] = []
    for blk in range(m):
        base = len(roles)
        roles.extend(Role("H", copy, blk, name) for name in H_LABELS)
        edges.extend((base + a, base + b) for a, b in H_EDGES)
        clique += [base, base + 1]
    for _ in range(r):
        clique.append(len(roles))
        roles.append(Role("R", copy))
    edges.extend(combinations(clique, 2))
    order = len(roles)
    edges.extend((a, b) for a in range(l) for b in range(a + 1, order))
    return LabeledExtremalGraph(Graph(order, edges), tuple(roles), l, m, r, 1)


def build_Q(k: int) -> LabeledExtremalGraph:
    p = params(k)
    q = miniature(p.l, p.m, p.r)
    if q.graph.n != 2 * k + 1:
        raise AssertionError("Q has the wrong order")
    return q


def g_analogue(q: LabeledExtremalGraph, n: int) -> LabeledExtremalGraph:
    """K_n joined to 2n+1 disjoint copies of q."""
    if n < 1:
        raise ValueError("n must be positive")
    size = q.graph.n
    roles: list[Role] = [Role("Q0") for _ in range(n)]
    edges: list[tuple[int, int]] = list(combinations(range(n), 2))
    for c in range(1, 2 * n + 2):
        base = len(roles)
        roles.extend(Role(rl.kind, c, rl.block, rl.label) for rl in q.roles)
        edges.extend((base + a, base + b) for a, b in q.graph.edges)
        edges.extend((a, base + b) for a in range(n) for b in range(size))
    return LabeledExtremalGraph(Graph(len(roles), edges), tuple(roles), q.l, q.m, q.r, 2 * n + 1)


def build_Gn(k: int, n: int) -> LabeledExtremalGraph:
    g = g_analogue(build_Q(k), n)
    if g.graph.n != n + (2 * n + 1) * (2 * k + 1):
        raise AssertionError("G_n has the wrong order")
    return g


# -- gadget deletion table ----------------------------------------------------


@dataclass(frozen=True)
class Lemma53Report:
    rows: tuple[tuple[tuple[str, ...], int], ...]  # (deleted labels, odd count)
    violations: tuple[str, ...]
    min_size: dict[int, int]

    @property
    def ok(self) -> bool:
        return not self.violations and len(self.rows) == 64

    def to_json(self) -> str:
        return json.dumps(
            {
                "cases": len(self.rows),
                "passed": len(self.rows) - len(self.violations),
                "violations": list(self.violations),
                "min_size": {str(s): v for s, v in sorted(self.min_size.items())},
            }
        )


def verify_lemma53() -> Lemma53Report:
    """Every X with {u, v} in X: at most two odd pieces, one needs |X| >= 3,
    two need |X| >= 4."""
    h = build_H().graph
    rows, bad, min_size = [], [], {}
    inner = list(range(2, 8))
    for size in range(7):
        for extra in combinations(inner, size):
            x = (0, 1) + extra
            s = component_profile(h, x).odd_components
            names = tuple(H_LABELS[v] for v in x)
            rows.append((names, s))
            min_size[s] = min(min_size.get(s, 99), len(x))
            if s > 2 or (s == 1 and len(x) < 3) or (s == 2 and len(x) < 4):
                bad.append(f"X={{{','.join(names)}}}: {s} odd components")
    return Lemma53Report(tuple(rows), tuple(bad), min_size)


# -- Hamiltonian paths --------------------------------------------------------


@dataclass(frozen=True)
class HamResult:
    status: str  # "yes", "no" or "unknown"
    path: tuple[int, ...] | None = None
    method: str = "backtracking"


def hamiltonian_path_exists(g: Graph, budget: int = 10**6, dp_limit: int = 0) -> HamResult:
    """Sound in both definite directions; ``unknown`` when out of budget."""
    if g.n <= dp_limit:
        path = hamiltonian_path_dp(g, max_order=dp_limit)
        return HamResult("no" if path is None else "yes", None if path is None else tuple(path), "dp")
    try:
        path = hamiltonian_path(g, budget=budget)
    except SearchBudgetExceeded:
        return HamResult("unknown")
    return HamResult("no" if path is None else "yes", None if path is None else tuple(path))


# -- per-copy optimum ---------------------------------------------------------


def _block_classes(k: int) -> dict[tuple[int, int, int, bool], int]:
    """Deletion patterns of one gadget, keyed by (deleted, separated odd
    pieces, vertices still attached to the terminal clique, terminal kept);
    value is a representative deletion mask."""
    h = build_H().graph
    out: dict[tuple[int, int, int, bool], int] = {}
    for s in range(256):
        rest = 0xFF & ~s
        sep, attached = 0, 0
        for comp in component_masks(h, rest):
            size = popcount(comp)
            if comp & 0b11:
                attached += size
            elif size % 2 and size <= 2 * k - 1:
                sep += 1
        key = (popcount(s), sep, attached, bool(rest & 0b11))
        out.setdefault(key, s)
    return out


@dataclass(frozen=True)
class CopyProfile:
    """Best weighted odd-piece count of one copy for each deletion size."""

    k: int
    best: tuple[int, ...]  # best[t] over deletions of size t (-1: none recorded)
    witness: tuple[tuple[int, ...], ...]


def copy_profile(q: LabeledExtremalGraph, k: int) -> CopyProfile:
    """Exact maximum of the small-odd-piece count of q - X for every |X|.

    With L fully deleted the gadgets interact only through the clique on the
    terminals and R, so a dynamic program over gadgets tracking the size of
    the clique's component is exact.  With some L vertex kept, q - X is
    connected and counts at most once.
    """
    g = q.graph
    order, l, m, r = g.n, q.l, q.m, q.r
    limit = 2 * k - 1
    best = [-1] * (order + 1)
    witness: list[tuple[int, ...]] = [()] * (order + 1)

    def offer(t: int, s: int, x) -> None:
        if s > best[t]:
            best[t], witness[t] = s, tuple(sorted(x))

    # some L vertex kept: one connected remainder
    if l:
        for t in range(order):
            rem = order - t
            s = 1 if rem % 2 and rem <= limit else 0
            offer(t, s, range(t) if t < l else list(range(l - 1)) + list(range(l, t + 1)))
    # L deleted: dynamic program over gadgets
    classes = _block_classes(k)
    blocks = [q.select("H", block=b) for b in range(m)]
    # state: (deleted, attached, any terminal kept) -> (separated pieces, choices)
    states: dict[tuple[int, int, bool], tuple[int, tuple[int, ...]]] = {(0, 0, False): (0, ())}
    for _ in range(m):
        nxt: dict[tuple[int, int, bool], tuple[int, tuple[int, ...]]] = {}
        for (t, att, kept), (sep, picks) in states.items():
            for (dt, dsep, datt, dkept), rep in classes.items():
                key = (t + dt, att + datt, kept or dkept)
                val = sep + dsep
                if key not in nxt or val > nxt[key][0]:
                    nxt[key] = (val, picks + (rep,))
        states = nxt
    r_vertices = q.select("R")
    for (t, att, kept), (sep, picks) in states.items():
        for rx in range(r + 1):
            core = att + (r - rx)
            s = sep + (1 if core % 2 and core <= limit else 0)
            x = list(range(l)) + r_vertices[:rx]
            for blk, rep in zip(blocks, picks):
                x += [blk[i] for i in members(rep)]
            offer(t + l + rx, s, x)
    return CopyProfile(k, tuple(best), tuple(witness))


def _weighted(g: Graph, x, k: int) -> int:
    return component_profile(g, x).small_odd_sum(k)


# -- ratio audit on G_n ------------------------------------------------------


def symbolic_chain(k: int, n: int = 1) -> dict[str, bool]:
    """Exact-rational checks of the inequality chain behind the bound."""
    p = params(k, n)
    l, m = p.l, p.m
    bound = thresholds(k).thm2
    tail = Fraction(32 * k - 879, 288 * k - 312)
    mm = Fraction(32 * k + 73, 136)
    ll = Fraction(2 * k - 56, 17)
    return {
        "(2m+1)/(4m+l)<=bound": Fraction(2 * m + 1, 4 * m + l) <= bound,
        "(m-7)/(8m+2l)<=tail": Fraction(m - 7, 8 * m + 2 * l) <= tail,
        "bound-identity": (2 * mm + 1) / (4 * mm + ll) == bound,
        "tail-identity": (mm - 7) / (8 * mm + 2 * ll) == tail,
        "connected-case": 2 * Fraction(2 * m + 1, 4 * m + l) + Fraction(2 * l - 4, 8 * m + 2 * l) == 1
        and 2 * l - 4 <= m - 7,
        "combined-negative": (-64 * n + 32) * k - 2322 * n - 879 < 0,
        "combined-identity": bound * (-n) + tail * (2 * n + 1)
        == Fraction((-64 * n + 32) * k - 2322 * n - 879, 288 * k - 312),
        "printed-tail-weaker": Fraction(32 * k + 879, 288 * k - 312) >= tail,
    }


@dataclass
class Theorem2Audit:
    k: int
    n: int
    order: int
    bound: Fraction
    structured_ratio: Fraction = Fraction(0)
    structured_witness: tuple[int, ...] = ()
    gadget_table_ratio: Fraction = Fraction(0)
    random_ratio: Fraction = Fraction(0)
    random_witness: tuple[int, ...] = ()
    samples: int = 0
    symbolic: dict[str, bool] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and all(self.symbolic.values())

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "n": self.n,
                "order": self.order,
                "bound": fraction_str(self.bound),
                "structured_ratio": fraction_str(self.structured_ratio),
                "structured_witness": list(self.structured_witness),
                "gadget_table_ratio": fraction_str(self.gadget_table_ratio),
                "random_ratio": fraction_str(self.random_ratio),
                "samples": self.samples,
                "symbolic": self.symbolic,
                "violations": self.violations,
            }
        )


def _compose(prof: CopyProfile, n: int, copies: int) -> tuple[Fraction, int]:
    """max over per-copy sizes t of copies*best[t] / (n + copies*t), solved by
    parametric iteration (all copies face the same choice)."""
    opts = [(t, s) for t, s in enumerate(prof.best) if s >= 0]
    lam, pick = Fraction(0), 0
    while True:
        t, s = max(opts, key=lambda o: (o[1] - lam * o[0], -o[0]))
        val = Fraction(copies * s, n + copies * t)
        if val <= lam:
            return lam, pick
        lam, pick = val, t


def _gadget_table_ratio(p: ExtremalParams, copies: int, n: int) -> Fraction:
    """The proof's composition: every copy deletes L, U, and one or two extra
    gadget vertices per gadget; the R clique adds at most one piece."""
    best = Fraction(0)
    for m2 in range(p.m + 1):
        for m1 in range(p.m - m2 + 1):
            s = m1 + 2 * m2 + (1 if p.r % 2 else 0)
            t = p.l + 2 * p.m + m1 + 2 * m2
            best = max(best, Fraction(copies * s, n + copies * t))
    return best


def audit_theorem2(k: int, n: int = 1, samples: int = 100_000, seed: int = 0) -> Theorem2Audit:
    p = params(k, n)
    lg = build_Gn(k, n)
    g = lg.graph
    bound = thresholds(k).thm2
    audit = Theorem2Audit(k, n, g.n, bound, symbolic=symbolic_chain(k, n))
    copies = 2 * n + 1

    def check(x, label: str) -> Fraction:
        x = sorted(set(x))
        s = _weighted(g, x, k)
        if s > bound * len(x) or (not x and s > 0):
            audit.violations.append(f"{label}: X={x} gives {s} odd pieces")
        return Fraction(s, len(x)) if x else Fraction(0)

    check([], "empty")
    # structured layer: Q0 deleted, copies chosen optimally
    prof = copy_profile(build_Q(k), k)
    ratio, t = _compose(prof, n, copies)
    size_q = 2 * k + 1
    x = list(range(n))
    for c in range(copies):
        base = n + c * size_q
        x += [base + v for v in prof.witness[t]]
    real = check(x, "structured")
    if real != ratio:
        audit.violations.append(f"structured optimum {ratio} re-evaluates to {real}")
    audit.structured_ratio, audit.structured_witness = real, tuple(x)
    # Q0 only partly deleted: the remainder is connected and must be small and odd
    rest = 2 * k - 1
    check(list(range(1, g.n - rest + 1)), "partial-Q0")
    audit.gadget_table_ratio = _gadget_table_ratio(p, copies, n)
    if audit.gadget_table_ratio > bound:
        audit.violations.append(f"gadget-table composition {audit.gadget_table_ratio} exceeds bound")
    # random layer, biased towards the proof's extremal shapes
    rng = np.random.default_rng(seed)
    kind = np.array([{"Q0": 0, "L": 1, "R": 3}.get(rl.kind, 2 if rl.label in ("u", "v") else 4)
                     for rl in lg.roles])
    probs = np.array(
        [[0.5, 0.5, 0.5, 0.5, 0.5],
         [1.0, 1.0, 1.0, 0.5, 0.3],
         [1.0, 1.0, 0.8, 0.5, 0.2],
         [1.0, 0.9, 0.6, 0.5, 0.4]]
    )
    mode = rng.integers(0, len(probs) + 1, size=samples)
    uniform = rng.random(samples)
    p_row = np.where(
        (mode == len(probs))[:, None],
        uniform[:, None] * np.ones(g.n),
        probs[np.minimum(mode, len(probs) - 1)][:, kind],
    )
    deleted = rng.random((samples, g.n)) < p_row
    deleted = deleted[deleted.any(axis=1)]
    table = np.zeros(g.n + 1, dtype=np.int64)
    table[1 : 2 * k : 2] = 1
    indptr, indices = _csr(g)
    sums = K.csr_weighted_sums(indptr, indices, g.n, deleted, table)
    sizes = deleted.sum(axis=1)
    lhs = sums.astype(object) * bound.denominator
    rhs = sizes.astype(object) * bound.numerator
    for i in np.flatnonzero(lhs > rhs)[:20]:
        audit.violations.append(f"random: X={np.flatnonzero(deleted[i]).tolist()}")
    ratios = [Fraction(int(s), int(z)) for s, z in zip(sums, sizes)]
    best_i = max(range(len(ratios)), key=lambda i: (ratios[i], -sizes[i]))
    audit.random_ratio = ratios[best_i]
    audit.random_witness = tuple(np.flatnonzero(deleted[best_i]).tolist())
    audit.samples = int(len(deleted))
    return audit


# -- no-factor audit ----------------------------------------------------------


@dataclass
class NoFactorAudit:
    k: int
    n: int
    arithmetic: dict[str, bool]
    full_scale_hamiltonian: str
    miniatures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.arithmetic.values()) and all(mi["consistent"] for mi in self.miniatures)

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "n": self.n,
                "arithmetic": self.arithmetic,
                "full_scale_hamiltonian": self.full_scale_hamiltonian,
                "miniatures": self.miniatures,
            }
        )


DEFAULT_MINIATURES = ((0, 1, 1), (1, 2, 1), (0, 3, 1))


def miniature_chain(l: int, m: int, r: int, budget: int = 10**7, dp_limit: int = 20) -> dict:
    """Hamiltonicity of a miniature Q and, when it has odd order and no
    Hamiltonian path, factor-freeness of its K_1 + 3Q analogue."""
    q = miniature(l, m, r)
    order = q.graph.n
    ham = hamiltonian_path_exists(q.graph, budget)
    entry = {"l": l, "m": m, "r": r, "order": order, "hamiltonian_path": ham.status}
    if order <= dp_limit:
        dp = hamiltonian_path_exists(q.graph, dp_limit=dp_limit)
        entry["dp"] = dp.status
        entry["solvers_agree"] = dp.status == ham.status
    consistent = entry.get("solvers_agree", True)
    if order % 2 and ham.status == "no":
        k_small = (order - 1) // 2
        g = g_analogue(q, 1).graph
        entry["k"] = k_small
        entry["analogue_order"] = g.n
        try:
            f = exact_factor(g, k_small, budget)
            entry["analogue_factor"] = "none" if f is None else "found"
            consistent = consistent and f is None
        except SearchBudgetExceeded:
            entry["analogue_factor"] = "unknown"
    else:
        entry["analogue_factor"] = "not applicable"
    entry["consistent"] = consistent
    return entry


def audit_no_factor(
    k: int, n: int = 1, budget: int = 10**6, miniatures=DEFAULT_MINIATURES
) -> NoFactorAudit:
    p = params(k, n)
    q = build_Q(k)
    arithmetic = {
        "|Q|=2k+1": q.graph.n == 2 * k + 1,
        "2n+1>2|Q0|": 2 * n + 1 > 2 * n,
        "|G_n|": n + (2 * n + 1) * (2 * k + 1) == build_Gn(k, n).graph.n,
        "params": all(p.clauses().values()),
    }
    status = hamiltonian_path_exists(q.graph, budget).status
    audit = NoFactorAudit(k, n, arithmetic, status)
    for lmr in miniatures:
        audit.miniatures.append(miniature_chain(*lmr, budget=10**7))
    return audit
