"""Odd ear decompositions and heights
====================================

Every hypomatchable graph is an odd cycle plus odd ears.  Heights record
how deep each ear sits; the witness set collects ear ends and picks out
many isolated vertices per deleted vertex.
"""

# %%
from pathfactor.ear import compute_heights, find_odd_ear_decomposition, improve_h1, witness_set
from pathfactor.graph import component_profile, friendship_graph, parse_graph6

# %%
f3 = friendship_graph(3)
d = compute_heights(f3, find_odd_ear_decomposition(f3))
print(d.sequence, d.ear_heights)

# %% [markdown]
# Local moves grow the first ear when a longer odd cycle leaves a perfect
# matching behind.

# %%
g = parse_graph6("HRNy]LH")
d0 = find_odd_ear_decomposition(g)
d1 = improve_h1(g, d0)
print(d0.sequence, "->", d1.sequence)

# %%
for t in (3, 4, 5):
    g = friendship_graph(t)
    w = witness_set(g, 3)
    print(t, w.x, w.ratio, component_profile(g, w.x).count(1))
