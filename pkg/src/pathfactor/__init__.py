"""Exact tools for path factors avoiding short odd paths.

Submodules: ``graph`` (bitmask graphs, graph6), ``matching``, ``paths``,
``factor``, ``ear``, ``toughness``, ``extremal``, ``catalogue`` and
``acceptance``; ``pathfactor`` on the command line drives all of them.
"""

from __future__ import annotations

from .factor import Factor, exact_factor, path_factor
from .graph import Graph, parse_graph6, to_graph6
from .matching import barrier_set, is_hypomatchable, max_matching
from .toughness import check_condition, max_ratio, thresholds

__all__ = [
    "Factor",
    "Graph",
    "barrier_set",
    "check_condition",
    "exact_factor",
    "is_hypomatchable",
    "max_matching",
    "max_ratio",
    "parse_graph6",
    "path_factor",
    "thresholds",
    "to_graph6",
]
__version__ = "0.1.0"
