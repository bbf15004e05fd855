"""Command-line entry point.

Exit codes: 0 success (holds, factor found), 1 definitive negative,
2 unknown within budget, 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, ear, extremal, factor, matching, toughness
from .catalogue import catalogue
from .graph import (
    Graph,
    GraphFormatError,
    parse_edge_list,
    parse_graph6,
    profile_json,
    to_edge_list,
    to_graph6,
)
from .paths import SearchBudgetExceeded

OK, NEGATIVE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class Report:
    code: int
    payload: str  # JSON text, or raw text for graph output
    raw: bool = False


# -- input / output -----------------------------------------------------------


def read_graph(path: str | None, inline: str | None) -> Graph:
    if inline is not None:
        return parse_graph6(inline)
    if path is None:
        raise InputError("no graph given (use --in FILE or --g6 STRING)")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    stripped = text.strip()
    first = stripped.split("\n", 1)[0].strip() if stripped else ""
    if first.startswith(">>graph6<<") or (first and " " not in first and not first.isdigit()):
        return parse_graph6(first)
    return parse_edge_list(text)


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected a list of integers, got {text!r}") from exc


def _weights(text: str | None):
    if text is None:
        return None
    return [toughness.parse_fraction(w) for w in text.split(",")]


def render(payload: str, fmt: str) -> str:
    if fmt == "json":
        return payload + "\n"
    data = json.loads(payload)
    rows = data.items() if isinstance(data, dict) else enumerate(data)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, val in rows:
            w.writerow([key, val if isinstance(val, str) else json.dumps(val)])
        return buf.getvalue()
    return "".join(f"{key}: {val if isinstance(val, str) else json.dumps(val)}\n" for key, val in rows)


# -- handlers -----------------------------------------------------------------


def _graph(a) -> Report:
    g = read_graph(a.input, a.g6)
    if a.action == "convert":
        text = to_graph6(g) + "\n" if a.to == "graph6" else to_edge_list(g)
        return Report(OK, text, raw=True)
    return Report(OK, profile_json(g, _int_list(a.delete), a.k))


def _matching(a) -> Report:
    g = read_graph(a.input, a.g6)
    if a.action == "max":
        m = matching.max_matching(g)
        data = {"nu": len(m), "deficiency": g.n - 2 * len(m), "pairs": [list(p) for p in m.pairs]}
        return Report(OK, json.dumps(data))
    if a.action == "hypo":
        h = matching.is_hypomatchable(g)
        return Report(OK if h else NEGATIVE, json.dumps({"hypomatchable": h}))
    check = matching.validate_barrier(g, matching.barrier_set(g))
    return Report(OK if check.ok else NEGATIVE, check.to_json())


def _ear(a) -> Report:
    g = read_graph(a.input, a.g6)
    if not matching.is_hypomatchable(g):
        raise InputError("graph is not hypomatchable")
    if a.action == "witness":
        try:
            w = ear.witness_set(g, a.k, a.budget)
        except ear.PreconditionViolated as exc:
            raise InputError(str(exc)) from exc
        return Report(OK, w.to_json())
    d = ear.find_odd_ear_decomposition(g)
    if a.action == "heights":
        d = ear.compute_heights(g, d)
    return Report(OK, d.to_json())


def _factor(a) -> Report:
    g = read_graph(a.input, a.g6)
    k = 1 if a.action == "path" else a.k
    if a.action == "prop21":
        try:
            f = factor.construct_factor_via_prop21(g, k, a.budget)
        except factor.HypothesisViolated as exc:
            return Report(NEGATIVE, json.dumps({"k": k, "result": "hypothesis violated",
                                                "X": list(exc.x), "b": exc.b}))
    else:
        f = factor.exact_factor(g, k, a.budget)
    if f is None:
        return Report(NEGATIVE, json.dumps({"k": k, "result": "none"}))
    return Report(OK, f.to_json())


def _toughness(a) -> Report:
    if a.action == "thresholds":
        return Report(OK, toughness.thresholds(a.k).to_json())
    if a.action == "scan":
        graphs = catalogue(a.max_order, a.min_order, connected=True)
        rep = toughness.theorem1_consistency_scan(graphs, a.k, a.budget)
        return Report(NEGATIVE if rep.violations else OK, rep.to_json())
    g = read_graph(a.input, a.g6)
    opts = {"cap": a.cap, "samples": a.samples, "seed": a.seed}
    if a.action == "maxratio":
        return Report(OK, toughness.max_ratio(g, a.k, _weights(a.weights), **opts).to_json())
    if a.epsilon is None:
        raise InputError("--epsilon is required")
    res = toughness.check_condition(g, a.k, a.epsilon, _weights(a.weights), **opts)
    return Report(OK if res.holds else NEGATIVE, res.to_json())


def _extremal(a) -> Report:
    if a.action == "params":
        return Report(OK, extremal.params(a.k, a.n).to_json())
    if a.action == "build":
        built = {
            "H": lambda: extremal.build_H(),
            "Q": lambda: extremal.build_Q(a.k),
            "Gn": lambda: extremal.build_Gn(a.k, a.n),
            "mini": lambda: extremal.miniature(a.l, a.m, a.r),
        }[a.what]()
        return Report(OK, to_graph6(built.graph) + "\n", raw=True)
    if a.what == "lemma53":
        rep = extremal.verify_lemma53()
        return Report(OK if rep.ok else NEGATIVE, rep.to_json())
    if a.what == "thm2":
        rep = extremal.audit_theorem2(a.k, a.n, a.samples, a.seed)
        return Report(OK if rep.ok else NEGATIVE, rep.to_json())
    rep = extremal.audit_no_factor(a.k, a.n, a.budget)
    return Report(OK if rep.ok else NEGATIVE, rep.to_json())


def _acceptance(a) -> Report:
    chosen = acceptance.select(a.only)
    if a.jobs > 1:
        with ProcessPoolExecutor(a.jobs) as pool:
            results = list(pool.map(acceptance.run_one, chosen, [a.seed] * len(chosen)))
    else:
        results = []
        for c in chosen:
            results.append(acceptance.run_one(c, a.seed))
            print(acceptance.format_line(results[-1]), flush=True)
    if a.jobs > 1:
        for r in results:
            print(acceptance.format_line(r))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return Report(OK if passed == len(results) else NEGATIVE, "", raw=True)


# -- parser -------------------------------------------------------------------


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", help="graph file (graph6 or edge list), '-' for stdin")
    p.add_argument("--g6", help="inline graph6 string")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="pathfactor", description="{P2, P2k+1}-factor toolkit")
    top.add_argument("--format", choices=("json", "csv", "text"), default="json")
    top.add_argument("--out", help="write the report here instead of stdout")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group(name: str, actions, handler, extra=None):
        p = sub.add_parser(name)
        inner = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
        for act in actions:
            q = inner.add_parser(act)
            q.set_defaults(handler=handler)
            if extra:
                extra(act, q)

    def graph_extra(act, q):
        _graph_args(q)
        if act == "convert":
            q.add_argument("--to", choices=("graph6", "edges"), default="graph6")
        else:
            q.add_argument("--delete", help="vertices to delete, comma separated")
            q.add_argument("--k", type=int)

    def budget_extra(act, q):
        _graph_args(q)
        q.add_argument("--k", type=int, default=3)
        q.add_argument("--budget", type=int, default=10**7)

    def tough_extra(act, q):
        q.add_argument("--k", type=int, required=True)
        if act == "scan":
            q.add_argument("--max-order", type=int, default=7)
            q.add_argument("--min-order", type=int, default=1)
            q.add_argument("--budget", type=int, default=10**7)
        elif act != "thresholds":
            _graph_args(q)
            q.add_argument("--epsilon")
            q.add_argument("--weights", help="comma-separated p/q weights")
            q.add_argument("--cap", type=int, default=22)
            q.add_argument("--samples", type=int, default=10_000)
            q.add_argument("--seed", type=int, default=0)

    group("graph", ("convert", "info"), _graph, graph_extra)
    group("matching", ("max", "hypo", "barrier"), _matching, lambda act, q: _graph_args(q))
    group("ear", ("decompose", "heights", "witness"), _ear, budget_extra)
    group("factor", ("solve", "path", "prop21"), _factor, budget_extra)
    group("toughness", ("maxratio", "check", "thresholds", "scan"), _toughness, tough_extra)

    ext = sub.add_parser("extremal")
    inner = ext.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = inner.add_parser("params")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p = inner.add_parser("build")
    p.add_argument("what", choices=("H", "Q", "Gn", "mini"))
    p.add_argument("--k", type=int, default=29)
    p.add_argument("--n", type=int, default=1)
    for name, default in (("l", 1), ("m", 2), ("r", 1)):
        p.add_argument(f"--{name}", type=int, default=default)
    p = inner.add_parser("audit")
    p.add_argument("what", choices=("lemma53", "thm2", "nofactor"))
    p.add_argument("--k", type=int, default=29)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**6)
    for q in inner.choices.values():
        q.set_defaults(handler=_extremal)

    acc = sub.add_parser("acceptance")
    acc.add_argument("--only", nargs="*", help="criterion names or numbers")
    acc.add_argument("--seed", type=int, default=0)
    acc.add_argument("--jobs", type=int, default=1)
    acc.set_defaults(handler=_acceptance, action=None)
    return top


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error mapped to INPUT_ERROR
        return int(exc.code or 0)
    try:
        rep = args.handler(args)
    except SearchBudgetExceeded:
        rep = Report(UNKNOWN, json.dumps({"result": "unknown"}))
    except (InputError, GraphFormatError, ValueError, OSError) as exc:
        print(f"pathfactor: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    text = rep.payload if rep.raw else render(rep.payload, args.format)
    if args.out:
        Path(args.out).write_text(text)
    elif text:
        sys.stdout.write(text)
    return rep.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
