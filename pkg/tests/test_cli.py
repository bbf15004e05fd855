from __future__ import annotations

import json
import subprocess
import sys

import pytest

from pathfactor.cli import INPUT_ERROR, NEGATIVE, OK, UNKNOWN, run
from pathfactor.graph import (
    cycle_graph,
    friendship_graph,
    parse_graph6,
    path_graph,
    to_edge_list,
    to_graph6,
)

C7 = to_graph6(cycle_graph(7))
F3 = to_graph6(friendship_graph(3))


def _json(capsys, argv, code=OK):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_maxratio(capsys):
    data = _json(capsys, ["toughness", "maxratio", "--g6", C7, "--k", "3"])
    assert data["max_ratio"] == "3/4" and data["mode"] == "exhaustive"


def test_check_exit_codes(capsys):
    data = _json(capsys, ["toughness", "check", "--g6", C7, "--k", "3", "--epsilon", "1/1"])
    assert data["holds"] is True
    data = _json(capsys, ["toughness", "check", "--g6", C7, "--k", "3", "--epsilon", "5/54"],
                 NEGATIVE)
    assert data["holds"] is False


@pytest.mark.parametrize("eps", ["0.5", "inf", "1/0"])
def test_inexact_epsilon_rejected(capsys, eps):
    assert run(["toughness", "check", "--g6", C7, "--k", "3", "--epsilon", eps]) == INPUT_ERROR


def test_thresholds(capsys):
    data = _json(capsys, ["toughness", "thresholds", "--k", "29"])
    assert data["thm2"] == "1069/2010" and data["conj11"] == "122/235"


def test_factor_solve(capsys):
    assert _json(capsys, ["factor", "solve", "--g6", F3, "--k", "3"], NEGATIVE) == {
        "k": 3, "result": "none"}
    data = _json(capsys, ["factor", "solve", "--g6", to_graph6(path_graph(7)), "--k", "3"])
    assert data["k"] == 3 and [len(p) for p in data["pieces"]] == [7]


def test_factor_budget_unknown(capsys):
    argv = ["factor", "solve", "--g6", to_graph6(cycle_graph(9)), "--k", "2", "--budget", "3"]
    assert _json(capsys, argv, UNKNOWN) == {"result": "unknown"}


def test_matching_commands(capsys):
    assert _json(capsys, ["matching", "max", "--g6", C7])["nu"] == 3
    assert _json(capsys, ["matching", "hypo", "--g6", C7]) == {"hypomatchable": True}
    c6 = to_graph6(cycle_graph(6))
    assert _json(capsys, ["matching", "hypo", "--g6", c6], NEGATIVE) == {"hypomatchable": False}
    assert _json(capsys, ["matching", "barrier", "--g6", C7])["S"] == []


def test_ear_commands(capsys):
    assert _json(capsys, ["ear", "witness", "--g6", F3, "--k", "3"]) == {
        "X": [0, 1, 2, 4, 6], "level": 1, "ratio": "2/5"}
    data = _json(capsys, ["ear", "heights", "--g6", F3])
    assert data["ear_heights"] == [0, 1, 1] and data["blocks"] == [[0, 1, 2], [3, 4], [5, 6]]
    c6 = to_graph6(cycle_graph(6))
    assert run(["ear", "decompose", "--g6", c6]) == INPUT_ERROR


def test_graph_round_trip(tmp_path, capsys):
    g = friendship_graph(3)
    src = tmp_path / "f3.txt"
    src.write_text(to_edge_list(g))
    assert run(["graph", "convert", "--in", str(src)]) == OK
    assert parse_graph6(capsys.readouterr().out.strip()) == g
    assert run(["graph", "convert", "--g6", F3, "--to", "edges"]) == OK
    src.write_text(capsys.readouterr().out)
    assert run(["graph", "convert", "--in", str(src)]) == OK
    assert capsys.readouterr().out.strip() == F3


def test_graph_info_and_out(tmp_path, capsys):
    out = tmp_path / "info.json"
    assert run(["--out", str(out), "graph", "info", "--g6", C7, "--delete", "0,2", "--k", "3"]) == OK
    data = json.loads(out.read_text())
    assert data["components"] == [1, 4] and data["c_odd_small"]["1"] == 1


def test_formats(capsys):
    assert run(["--format", "csv", "toughness", "thresholds", "--k", "3"]) == OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "key,value" and "theorem1,5/54" in lines
    assert run(["--format", "text", "toughness", "thresholds", "--k", "3"]) == OK
    assert "conj11: 2/3" in capsys.readouterr().out


def test_extremal_commands(capsys):
    assert _json(capsys, ["extremal", "params", "--k", "29"]) == {
        "k": 29, "l": 2, "m": 7, "r": 1, "n": 1}
    assert run(["extremal", "build", "Q", "--k", "29"]) == OK
    assert parse_graph6(capsys.readouterr().out.strip()).n == 59
    assert run(["extremal", "build", "mini", "--l", "1", "--m", "2", "--r", "1"]) == OK
    assert parse_graph6(capsys.readouterr().out.strip()).n == 18
    assert _json(capsys, ["extremal", "audit", "lemma53"])["passed"] == 64
    data = _json(capsys, ["extremal", "audit", "thm2", "--samples", "500"])
    assert data["violations"] == []
    assert run(["extremal", "params", "--k", "10"]) == INPUT_ERROR


def test_input_errors(tmp_path, capsys):
    assert run(["graph", "info", "--g6", "??"]) == INPUT_ERROR
    assert run(["graph", "info"]) == INPUT_ERROR
    assert run(["graph", "info", "--in", str(tmp_path / "missing")]) == INPUT_ERROR
    assert run(["bogus"]) == INPUT_ERROR
    assert run(["graph", "info", "--g6", C7, "--delete", "a,b"]) == INPUT_ERROR


def test_acceptance_command(capsys):
    assert run(["acceptance", "--only", "lemma53", "figure1"]) == OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("[PASS]  1 lemma53") and out[-1] == "2/2 criteria passed"
    assert run(["acceptance", "--only", "nonsense"]) == INPUT_ERROR


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "pathfactor.cli", "toughness", "thresholds",
                           "--k", "36"], capture_output=True, text=True)
    assert proc.returncode == OK and json.loads(proc.stdout)["thm2"] == "431/838"
