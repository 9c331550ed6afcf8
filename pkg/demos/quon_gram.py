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
# # Quon Gram matrices
#
# With `T = q * flip` the deformed scalar product of two words is a sum over
# permutations weighted by `q` to the number of inversions. Here we build the
# Gram matrices level by level and watch their smallest eigenvalue as `q`
# moves towards the endpoints.

# %%
import itertools

import numpy as np

from gsfock import family_quon, gram, p_operator, positivity_report, tilde

# %% [markdown]
# For a single generator the level-`n` Gram matrix is 1x1 and equals the
# q-factorial `[n]_q!`.

# %%
def q_factorial(q, n):
    out = 1.0
    for k in range(1, n + 1):
        out *= sum(q**j for j in range(k))
    return out


Tt = tilde(family_quon(1, 0.5).cross)
for n in range(6):
    print(n, p_operator(Tt, n)[0, 0].real, q_factorial(0.5, n))

# %% [markdown]
# Two generators: compare against direct enumeration of permutations.

# %%
def inversions(p):
    return sum(p[a] > p[b] for a, b in itertools.combinations(range(len(p)), 2))


def brute_gram(q, N, n):
    words = list(itertools.product(range(N), repeat=n))
    G = np.zeros((len(words), len(words)))
    for J, w in enumerate(words):
        for p in itertools.permutations(range(n)):
            G[words.index(tuple(w[k] for k in p)), J] += q ** inversions(p)
    return G


Tt = tilde(family_quon(2, -0.3).cross)
print(max(np.abs(p_operator(Tt, n) - brute_gram(-0.3, 2, n)).max() for n in range(1, 5)))

# %% [markdown]
# Positivity: strictly positive for `|q| < 1`, with a kernel appearing at
# `q = +-1` (the bosonic and fermionic symmetrisers).

# %%
for q in (-1.0, -0.9, -0.5, 0.0, 0.5, 0.9, 1.0):
    Tt = tilde(family_quon(2, q).cross)
    rep = positivity_report(gram(Tt, 4))
    print(f"q={q:+.1f}  min eig {rep.min_eigenvalue:.4f}  kernel {rep.kernel_dim}")
