# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Eta quotients and Eisenstein series
#
# Everything lives in `LaurentSeries`: a truncated q-expansion over ZZ, QQ or GF(p).

# %%
import numpy as np

from halfmod import GF, LaurentSeries, eisenstein, eta_quotient, jacobi_theta

# %% [markdown]
# The overpartition generating function is eta(2z)/eta(z)^2.

# %%
W = eta_quotient({2: 1, 1: -2}, 20)
print([W[n] for n in range(12)])

# %% [markdown]
# E_(p-1) is congruent to 1 mod p. Check a few primes.

# %%
for p in (5, 7, 11, 13):
    E = eisenstein(p - 1, 500).reduce(p)
    print(p, E == LaurentSeries([1], prec=500, ring=GF(p)))

# %%
T = jacobi_theta(200)
r3 = np.array([(T**3)[n] for n in range(200)])
# r_3 vanishes on 4^k (8j + 7)
print(np.nonzero(r3 == 0)[0][:10])
