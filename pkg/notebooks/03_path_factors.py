"""Path factors without short odd paths
=======================================

A factor here is a partition into paths of order 2 or at least 2k+1.
``exact_factor`` is a complete search; ``construct_factor_via_prop21``
builds one from a barrier whenever the deficient-component count stays
within |X| for every X, and otherwise hands back a violating set.
"""

# %%
from pathfactor.factor import (
    HypothesisViolated,
    construct_factor_via_prop21,
    exact_factor,
    find_bf_violator,
    validate_factor,
)
from pathfactor.graph import complete_graph, copies, cycle_graph, friendship_graph, join, path_graph

# %%
for name, g in [("P7", path_graph(7)), ("C7", cycle_graph(7)), ("F3", friendship_graph(3))]:
    f = exact_factor(g, 3)
    print(name, None if f is None else f.orders())

# %% [markdown]
# The barrier route on a graph where it applies, and on one where it does not.

# %%
good = join(complete_graph(2), copies(cycle_graph(5), 2))
f = construct_factor_via_prop21(good, 3)
print(f.orders(), validate_factor(good, f))

bad = join(complete_graph(1), copies(cycle_graph(5), 2))
try:
    construct_factor_via_prop21(bad, 3)
except HypothesisViolated as exc:
    print("violating set", exc.x, "deficient components", exc.b)

# %% [markdown]
# The deficient-count condition is sufficient, not necessary: P7 has a
# factor, yet deleting every other vertex leaves four isolated vertices.

# %%
print(find_bf_violator(path_graph(7), 3), exact_factor(path_graph(7), 3).orders())
