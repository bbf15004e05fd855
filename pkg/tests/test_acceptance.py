"""Runs every acceptance criterion at full size and prints one line each.

The lines are collected and shown in the terminal summary, so
``pytest tests/test_acceptance.py`` reports pass/fail per criterion even
under ``-q``.
"""

from __future__ import annotations

import pytest

from conftest import ACCEPTANCE_LINES
from pathfactor.acceptance import CRITERIA, format_line, run_one


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{c.number:02d}-{c.name}" for c in CRITERIA])
def test_criterion(criterion):
    result = run_one(criterion, seed=0)
    line = format_line(result)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line
