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
# # Hurwitz class numbers
#
# Two routes: counting reduced forms, and sums of three squares. The second is blind on n = 4^k (8j + 7).

# %%
import numpy as np

from halfmod import hurwitz_from_r3, hurwitz_oracle, hurwitz_table
from halfmod.classnum import r3_reachable
from halfmod.errors import HurwitzUnreachable

# %%
for n in (3, 4, 12, 23):
    try:
        via_r3 = hurwitz_from_r3(n).display()
    except HurwitzUnreachable:
        via_r3 = "unreachable"
    print(n, hurwitz_oracle(n).display(), via_r3)

# %%
X = 10_000
six = hurwitz_table(X)
valid = np.array([n for n in range(3, X + 1) if n % 4 in (0, 3)])
blind = np.array([not r3_reachable(int(n)) for n in valid])
print(len(valid), blind.sum())

# %%
vals = np.array([six[int(n)] for n in valid])
print(np.bincount(vals % 5, minlength=5))
