"""The extremal family
=====================

Q glues m copies of an eight-vertex gadget to a clique and joins l
universal vertices; G_n joins K_n to 2n+1 copies of Q.  The audit finds
the worst deletion set exactly by a per-copy dynamic program and also
samples random sets.
"""

# %%
from pathfactor.extremal import (
    audit_theorem2,
    build_Gn,
    build_Q,
    gadget_report,
    miniature_chain,
    params,
    verify_lemma53,
)

# %%
print(gadget_report())
rep = verify_lemma53()
print(rep.ok, rep.min_size)

# %%
for k in (29, 36, 100):
    print(params(k))
print(build_Q(29).graph, build_Gn(29, 1).graph)

# %%
a = audit_theorem2(29, 1, samples=20_000, seed=0)
print("bound", a.bound, "structured", a.structured_ratio, "random", a.random_ratio)
print(a.symbolic)

# %% [markdown]
# Miniatures small enough for an exact Hamiltonian path check.

# %%
for lmr in [(0, 1, 1), (1, 2, 1), (0, 3, 1)]:
    print(miniature_chain(*lmr))
