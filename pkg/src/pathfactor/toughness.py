"""Ratio conditions on small odd components and their threshold constants."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .factor import (
    HypothesisViolated,
    articulation_points,
    b_factor_count,
    construct_factor_via_prop21,
    exact_factor,
)
from .graph import Graph, component_profile, induced, members
from .matching import barrier_set

__all__ = [
    "RatioReport",
    "ConditionResult",
    "GoodPair",
    "Thresholds",
    "WEIGHTED_CONDITIONS",
    "parse_fraction",
    "fraction_str",
    "unit_weights",
    "necessary_weights",
    "max_ratio",
    "check_condition",
    "thresholds",
    "ScanReport",
    "theorem1_consistency_scan",
]


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction or "p/q" string; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"{value!r}: thresholds must be exact rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in {"inf", "+inf", "infinity", "nan"}:
            raise ValueError(f"{value!r}: threshold must be finite")
        try:
            p, _, q = text.partition("/")
            return Fraction(int(p), int(q) if q else 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{value!r} is not of the form p/q") from exc
    raise ValueError(f"{value!r}: unsupported threshold type")


def unit_weights(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(k))


def necessary_weights(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(k - j) for j in range(k))


# (k, weights, right-hand side) of the known weighted sufficient conditions
WEIGHTED_CONDITIONS: dict[str, tuple[int, tuple[Fraction, ...], Fraction]] = {
    "B": (2, (Fraction(1), Fraction(2, 3)), Fraction(4, 3)),
    "C": (3, (Fraction(1), Fraction(1, 3), Fraction(1, 3)), Fraction(2, 3)),
    "D": (4, (Fraction(1), Fraction(1), Fraction(2, 3), Fraction(1, 3)), Fraction(2, 3)),
}


def _scaled(n: int, k: int, weights) -> tuple[np.ndarray, int, tuple[Fraction, ...]]:
    """Integer weight-by-order table and its common denominator."""
    ws = unit_weights(k) if weights is None else tuple(parse_fraction(w) for w in weights)
    if len(ws) != k:
        raise ValueError(f"expected {k} weights, got {len(ws)}")
    if any(w < 0 for w in ws):
        raise ValueError("weights must be non-negative")
    den = math.lcm(*(w.denominator for w in ws)) if ws else 1
    table = np.zeros(n + 1, dtype=np.int64)
    for j, w in enumerate(ws):
        if 2 * j + 1 <= n:
            table[2 * j + 1] = int(w * den)
    return table, den, ws


@dataclass(frozen=True)
class RatioReport:
    k: int
    weights: tuple[Fraction, ...]
    max_ratio: Fraction
    witness: tuple[int, ...]
    mode: str
    base_sum: Fraction = Fraction(0)  # weighted sum for X = empty set

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "weights": [fraction_str(w) for w in self.weights],
                "max_ratio": fraction_str(self.max_ratio),
                "witness": list(self.witness),
                "mode": self.mode,
            }
        )


def _weighted(g: Graph, x, k: int, ws) -> Fraction:
    return component_profile(g, x).small_odd_sum(k, ws)


def _sampled_candidates(g: Graph, rng: np.random.Generator, samples: int) -> np.ndarray:
    """Boolean deletion matrix built from several structured families."""
    n = g.n
    rows: list[np.ndarray] = []

    def add(vs: Iterable[int]):
        row = np.zeros(n, dtype=np.bool_)
        row[list(vs)] = True
        if row.any():
            rows.append(row)

    add(barrier_set(g, exact_limit=0).s)
    cuts = articulation_points(g, g.full_mask)
    for c in cuts:
        add([c])
    for a in range(min(len(cuts), 40)):
        for b in range(a + 1, min(len(cuts), 40)):
            add([cuts[a], cuts[b]])
    # complements and neighbourhoods of random maximal independent sets
    n_indep = max(1, samples // 10)
    for _ in range(n_indep):
        order = rng.permutation(n)
        chosen = 0
        for v in order:
            if not g.adj[v] & chosen:
                chosen |= 1 << int(v)
        add(v for v in range(n) if not chosen >> v & 1)
        add(members(g.neighborhood(chosen)))
    dens = np.linspace(0.1, 0.9, 9)
    rest = max(0, samples - len(rows))
    if rest:
        p = dens[rng.integers(0, len(dens), size=rest)]
        rand = rng.random((rest, n)) < p[:, None]
        rows.extend(rand[rand.any(axis=1)])
    return np.array(rows, dtype=np.bool_).reshape(-1, n)


def _csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indices = []
    for v in range(g.n):
        nb = g.neighbors(v)
        indices.extend(nb)
        indptr[v + 1] = indptr[v] + len(nb)
    return indptr, np.array(indices, dtype=np.int64)


def max_ratio(
    g: Graph,
    k: int,
    weights: Sequence | None = None,
    cap: int = 22,
    samples: int = 10_000,
    seed: int = 0,
    extra: Iterable[Iterable[int]] = (),
) -> RatioReport:
    """Largest weighted small-odd-component count per deleted vertex.

    Exhaustive over every non-empty X when ``g.n <= cap``; otherwise a lower
    bound over sampled candidates (``mode == "sampled"``).
    """
    table, den, ws = _scaled(g.n, k, weights)
    base = _weighted(g, (), k, ws)
    if g.n == 0:
        return RatioReport(k, ws, Fraction(0), (), "exhaustive", base)
    if g.n <= min(cap, K.MAX_BITS):
        num, size, mask = K.max_ratio_exhaustive(K.adjacency_array(g.adj), g.n, table)
        ratio = Fraction(int(num), int(size) * den)
        return RatioReport(k, ws, ratio, tuple(members(int(mask))), "exhaustive", base)
    rng = np.random.default_rng(seed)
    cand = _sampled_candidates(g, rng, samples)
    extra_rows = []
    for x in extra:
        row = np.zeros(g.n, dtype=np.bool_)
        row[list(x)] = True
        if row.any():
            extra_rows.append(row)
    if extra_rows:
        cand = np.vstack([np.array(extra_rows), cand])
    indptr, indices = _csr(g)
    sums = K.csr_weighted_sums(indptr, indices, g.n, cand, table)
    sizes = cand.sum(axis=1)
    best_i = 0
    for i in range(len(sums)):
        # exact comparison of sums[i]/sizes[i] against the incumbent
        lhs = int(sums[i]) * int(sizes[best_i])
        rhs = int(sums[best_i]) * int(sizes[i])
        if lhs > rhs or (lhs == rhs and sizes[i] < sizes[best_i]):
            best_i = i
    witness = tuple(int(v) for v in np.flatnonzero(cand[best_i]))
    ratio = Fraction(int(sums[best_i]), int(sizes[best_i]) * den)
    return RatioReport(k, ws, ratio, witness, "sampled", base)


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    epsilon: Fraction
    report: RatioReport
    witness: tuple[int, ...] | None

    def to_json(self) -> str:
        return json.dumps(
            {
                "holds": self.holds,
                "epsilon": fraction_str(self.epsilon),
                "max_ratio": fraction_str(self.report.max_ratio),
                "witness": None if self.witness is None else list(self.witness),
                "mode": self.report.mode,
            }
        )


def check_condition(
    g: Graph, k: int, epsilon, weights: Sequence | None = None, **kw
) -> ConditionResult:
    """Does the weighted sum stay at most ``epsilon * |X|`` for every X?

    The empty set is included: the graph itself must have no weighted
    small odd component.  In sampled mode ``holds`` is only "no violation
    found".
    """
    eps = parse_fraction(epsilon)
    report = max_ratio(g, k, weights, **kw)
    if report.base_sum > 0:
        return ConditionResult(False, eps, report, ())
    if report.witness and report.max_ratio > eps:
        return ConditionResult(False, eps, report, report.witness)
    return ConditionResult(True, eps, report, None)


@dataclass(frozen=True)
class GoodPair:
    epsilon: Fraction
    lam: int

    def amplified(self) -> Fraction:
        """The constant lambda * epsilon / (lambda + 1)."""
        if self.epsilon > 1:
            raise ValueError("amplification needs epsilon <= 1")
        return self.lam * self.epsilon / (self.lam + 1)


@dataclass(frozen=True)
class Thresholds:
    k: int
    theorem1: Fraction | None
    good_pair: GoodPair | None
    necessary_rhs: int
    conj11: Fraction | None
    thm2: Fraction | None
    out_of_range: tuple[str, ...] = field(default=())

    @staticmethod
    def prop41(epsilon, lam: int) -> Fraction:
        return GoodPair(parse_fraction(epsilon), lam).amplified()

    def to_json(self) -> str:
        def fmt(x):
            return None if x is None else fraction_str(x)

        gp = None if self.good_pair is None else [fmt(self.good_pair.epsilon), self.good_pair.lam]
        return json.dumps(
            {
                "k": self.k,
                "theorem1": fmt(self.theorem1),
                "good_pair": gp,
                "necessary_rhs": self.necessary_rhs,
                "conj11": fmt(self.conj11),
                "thm2": fmt(self.thm2),
                "out_of_range": list(self.out_of_range),
            }
        )


def thresholds(k: int) -> Thresholds:
    """Exact threshold constants; fields outside their valid k-range are None."""
    if k < 1:
        raise ValueError("k must be at least 1")
    flagged = []
    if k >= 3:
        t1 = Fraction(5, 6 * k * k)
        gp = GoodPair(Fraction(1, k * k), 5)
        c11 = Fraction(4 * k + 6, 8 * k + 3)
    else:
        t1 = gp = c11 = None
        flagged += ["theorem1", "good_pair", "conj11"]
    if k >= 29:
        t2 = Fraction(32 * k + 141, 72 * k - 78)
    else:
        t2 = None
        flagged.append("thm2")
    return Thresholds(k, t1, gp, k + 1, c11, t2, tuple(flagged))


# -- consistency scan ---------------------------------------------------------


@dataclass
class ScanReport:
    k: int
    graphs: int = 0
    condition_holds: int = 0
    with_factor: int = 0
    without_factor: int = 0
    amplified: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "graphs": self.graphs,
                "condition_holds": self.condition_holds,
                "with_factor": self.with_factor,
                "without_factor": self.without_factor,
                "amplified": self.amplified,
                "violations": self.violations,
            }
        )


def amplify(g: Graph, k: int, budget: int = 10**7) -> tuple[list[int], list[int]]:
    """For a factor-free graph: (X', X0) where b_F(G - X') > |X'| and X0 adds a
    witness set inside every deficient component of order at least 2k+1."""
    from .ear import witness_set

    try:
        construct_factor_via_prop21(g, k, budget)
    except HypothesisViolated as exc:
        x_prime = exc.x
    else:
        raise ValueError("graph has a factor")
    _, bad = b_factor_count(g, x_prime, k, budget)
    x0 = set(x_prime)
    for comp in bad:
        if len(comp) < 2 * k + 1:
            continue
        sub = induced(g, comp)
        w = witness_set(sub.graph, k, budget)
        x0.update(sub.to_original(w.x))
    return x_prime, sorted(x0)


def theorem1_consistency_scan(
    graphs: Iterable[Graph], k: int, budget: int = 10**7, label=None
) -> ScanReport:
    """No graph may satisfy the 5/(6k^2) condition yet lack a factor; every
    factor-free graph must also yield an amplified violating set."""
    th = thresholds(k)
    eps = th.theorem1
    amp = th.good_pair.amplified()
    rep = ScanReport(k)
    for g in graphs:
        rep.graphs += 1
        cond = check_condition(g, k, eps)
        rep.condition_holds += cond.holds
        f = exact_factor(g, k, budget)
        if f is not None:
            rep.with_factor += 1
            continue
        rep.without_factor += 1
        name = label(g) if label else repr(g)
        if cond.holds:
            rep.violations.append(f"{name}: condition holds but no factor")
            continue
        _, x0 = amplify(g, k, budget)
        total = _weighted(g, x0, k, unit_weights(k))
        if not total > amp * len(x0):
            rep.violations.append(f"{name}: amplified set {x0} gives {total}")
        rep.amplified += 1
    return rep
