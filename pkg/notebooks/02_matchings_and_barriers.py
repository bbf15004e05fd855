"""Maximum matchings, deficiency and barrier sets
================================================

A barrier S maximises (odd components of G - S) - |S|; that surplus is
the deficiency n - 2*nu.  Every odd component left by a maximal barrier
is hypomatchable.
"""

# %%
from pathfactor.graph import complete_graph, copies, cycle_graph, join, star_graph
from pathfactor.matching import (
    barrier_set,
    deficiency,
    is_hypomatchable,
    max_matching,
    validate_barrier,
)

# %%
for name, g in [("star", star_graph(3)), ("C5", cycle_graph(5)), ("C6", cycle_graph(6))]:
    print(name, len(max_matching(g)), deficiency(g), is_hypomatchable(g))

# %% [markdown]
# Two pentagons hanging off an edge: the edge is the barrier.

# %%
g = join(complete_graph(2), copies(cycle_graph(5), 2))
b = barrier_set(g)
print(b)
print(validate_barrier(g, b).to_json())
