"""Running the acceptance matrix
===============================

Each criterion prints one line.  The quick ones run in well under a
second; the catalogue sweeps take a few minutes each.
"""

# %%
from pathfactor.acceptance import run

results = run(["lemma53", "figure1", "lemma51", "crossover", "witness", "miniature"])
print(sum(r.passed for r in results), "of", len(results), "passed")

# %% [markdown]
# The full matrix: ``pathfactor acceptance --jobs 4``.
