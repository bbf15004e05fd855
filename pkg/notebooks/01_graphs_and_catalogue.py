"""Graphs, graph6 and the small-graph catalogue
================================================

Graphs are stored as bitmask adjacency rows, so vertex subsets are plain
integers.  The catalogue lists every graph up to isomorphism and caches
it on disk as graph6.
"""

# %%
from pathfactor.catalogue import KNOWN_COUNTS, graphs_of_order, random_graph
from pathfactor.graph import component_profile, friendship_graph, parse_graph6, to_graph6

import numpy as np

# %% [markdown]
# Three triangles sharing a vertex.  Deleting the hub leaves three edges.

# %%
f3 = friendship_graph(3)
code = to_graph6(f3)
print(code, f3)
assert parse_graph6(code) == f3
print(component_profile(f3, [0]).component_orders)

# %% [markdown]
# Counts up to isomorphism match the known sequence.

# %%
for n in range(1, 8):
    print(n, len(graphs_of_order(n)), KNOWN_COUNTS[n])

# %%
rng = np.random.default_rng(0)
g = random_graph(12, 0.3, rng)
print(to_graph6(g), g.degrees())
