from __future__ import annotations

import os
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pathfactor.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    # reuse a populated user cache when present; otherwise build into a temp dir
    if "PATHFACTOR_CACHE" not in os.environ:
        home = os.path.expanduser("~/.cache/pathfactor")
        if not os.path.isdir(home):
            os.environ["PATHFACTOR_CACHE"] = str(tmp_path_factory.mktemp("cache"))
    yield


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, b in zip(pairs, keep) if b])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def hypomatchable_graphs(draw, max_n: int = 9) -> Graph:
    """An odd cycle followed by odd ears, plus random chords: every
    hypomatchable graph arises this way."""
    first = draw(st.sampled_from([c for c in (3, 5, 7, 9) if c <= max_n]))
    edges = {(i, i + 1) for i in range(first - 1)} | {(0, first - 1)}
    n = first
    while n + 2 <= max_n and draw(st.booleans()):
        new = draw(st.sampled_from([c for c in (2, 4, 6) if n + c <= max_n]))
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        walk = [a] + list(range(n, n + new)) + [b]
        edges |= {tuple(sorted(p)) for p in zip(walk, walk[1:])}
        n += new
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    edges |= {tuple(sorted(p)) for p in extra if p[0] != p[1]}
    perm = draw(st.permutations(range(n)))
    return Graph(n, {tuple(sorted((perm[u], perm[v]))) for u, v in edges})
