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
# # Bosons and fermions as braid quotients
#
# The flip (and its signed version) gives a degenerate scalar product. Dividing
# the tensor algebra by the ideal generated by `id - B` removes exactly that
# degeneracy, and the creation and annihilation operators descend.

# %%
import math

import numpy as np

from gsfock import (
    build_quotient_representation,
    family_boson,
    family_fermion,
    number_operator_spectrum,
    verify_brel,
)

# %%
boson = family_boson(2)
q = build_quotient_representation(boson.cross, boson.braid, 4)
print("boson quotient dims", q.dims, [math.comb(2 + n - 1, n) for n in range(5)])

fermion = family_fermion(3)
qf = build_quotient_representation(fermion.cross, fermion.braid, 4)
print("fermion quotient dims", qf.dims, [math.comb(3, n) for n in range(5)])

# %% [markdown]
# On the quotient the induced Gram matrices are positive definite.

# %%
for lv in qf.levels:
    if lv.quotient_dim:
        print(lv.n, np.round(np.linalg.eigvalsh(lv.induced_gram), 12))

# %% [markdown]
# Residuals of the commutation relations on the quotient, and the number
# operator, whose spectrum counts particles.

# %%
print(verify_brel(boson.cross, boson.braid, 4, quotient=q))
print(verify_brel(fermion.cross, fermion.braid, 4, quotient=qf))
print(np.round(number_operator_spectrum(boson.cross, boson.braid, 4, quotient=q).real, 10))
