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
# # Colour statistics from a commutation factor
#
# A bicharacter on a finite Abelian group together with a grading of the
# generators yields twisted flips. Symmetric bicharacters give consistent
# pairs; a non-symmetric one still satisfies Yang-Baxter but breaks the
# projector relation.

# %%
import cmath
import math
import warnings

from gsfock import (
    AbelianGroup,
    Bicharacter,
    Grading,
    build_quotient_representation,
    check_bicharacter,
    check_consistency,
    check_yang_baxter,
    family_color,
    parity_bicharacter,
    tilde,
    verify_adjointness,
)
from gsfock.statistics_zoo import root_of_unity_bicharacter

# %% [markdown]
# A Z2 grading with one even and one odd generator: a boson and a fermion
# that commute with each other.

# %%
z2 = AbelianGroup((2,))
mixed = family_color(z2, parity_bicharacter(z2), Grading(((0,), (1,))))
q = build_quotient_representation(mixed.cross, mixed.braid, 4)
print("dims", q.dims)
print("adjointness", verify_adjointness(mixed.cross, 4))

# %% [markdown]
# A complex commutation factor on Z3 x Z3.

# %%
g = AbelianGroup((3, 3))
omega = Bicharacter.from_function(g, lambda a, b: cmath.exp(2j * math.pi * (a[0] * b[1] - a[1] * b[0]) / 3))
print(check_bicharacter(omega))
spec = family_color(g, omega, Grading(((0, 1), (1, 0), (1, 1))))
print(check_yang_baxter(tilde(spec.cross)), check_consistency(spec.cross, spec.braid))

# %% [markdown]
# Non-symmetric: accepted with a warning, and the consistency check flags it.

# %%
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    eps = root_of_unity_bicharacter(3)
    odd = family_color(eps.group, eps, Grading(((1,), (2,))))
print([str(w.message) for w in caught])
print(check_yang_baxter(tilde(odd.cross)), check_consistency(odd.cross, odd.braid))
