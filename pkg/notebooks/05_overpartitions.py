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
# # Overpartitions and the twisted series G

# %%
from halfmod import g_twist_series, overpartition_enumerate, overpartition_product, overpartition_series
from halfmod.arith import kronecker

# %%
W = overpartition_series(41)
print([W[n] for n in range(10)])
print(overpartition_enumerate(4))
print(overpartition_product(41) == W)

# %% [markdown]
# G is W twisted by the quadratic character mod p. Its coefficients follow the value of (-n/p).

# %%
p = 5
G = g_twist_series(p, 40)
for n in range(1, 12):
    print(n, kronecker(-n, p), W[n] % p, G[n])
