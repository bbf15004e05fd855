"""Small odd components per deleted vertex
=========================================

``max_ratio`` finds the worst X exactly for graphs up to 22 vertices and
samples beyond that.  Threshold constants are exact fractions.
"""

# %%
from fractions import Fraction

from pathfactor.graph import complete_graph, cycle_graph, friendship_graph
from pathfactor.toughness import check_condition, max_ratio, thresholds

# %%
for name, g in [("C7", cycle_graph(7)), ("K6", complete_graph(6)), ("F3", friendship_graph(3))]:
    r = max_ratio(g, 3)
    print(name, r.max_ratio, r.witness)

# %%
for k in (3, 29, 35, 36, 100):
    t = thresholds(k)
    print(k, t.theorem1, t.conj11, t.thm2)

# %% [markdown]
# The large-k bound drops below the conjectured value from k = 36 on.

# %%
print(min(k for k in range(29, 200) if thresholds(k).thm2 < thresholds(k).conj11))

# %%
print(check_condition(complete_graph(16), 3, Fraction(5, 54)).holds)
print(check_condition(cycle_graph(6), 3, Fraction(5, 54)).to_json())
