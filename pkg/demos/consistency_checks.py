# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Structural checks and the consistency dichotomy
#
# Yang-Baxter for the rearranged cross operator, the braid relation, and the
# two relations tying `T` to `B`. Pairing a quon with the plain flip fails.

# %%
import numpy as np

from gsfock import (
    BraidOperator,
    TildeOperator,
    check_consistency,
    check_norm_bound,
    check_yang_baxter,
    family_boson,
    family_quon,
    quotient_structure,
    tilde,
)
from gsfock import multilinear as ml

# %%
for q in (1.0, 0.5, 0.0):
    spec = family_quon(2, q)
    rep = check_consistency(spec.cross, BraidOperator(ml.flip(2)))
    print(f"q={q}: projector residual {rep.projector_residual:.3g}, passed {rep.passed}")

# %% [markdown]
# The forced pairing also shows up as ideal vectors with nonzero norm.

# %%
Tt = tilde(family_quon(2, 0.5).cross)
print(quotient_structure(Tt, BraidOperator(ml.flip(2)), 2).containment_residual)
boson = family_boson(2)
print(quotient_structure(tilde(boson.cross), boson.braid, 3).containment_residual)

# %% [markdown]
# A rank-one perturbation of the flip leaves the operator norm near 1 but
# breaks Yang-Baxter.

# %%
perturbed = ml.flip(2).copy()
perturbed[1, 1] += 0.1
Tp = TildeOperator(perturbed)
print(check_yang_baxter(Tp), check_norm_bound(Tp))
print(check_yang_baxter(tilde(family_quon(3, 0.5).cross)))
