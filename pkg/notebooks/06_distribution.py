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
# # Residue distribution and Hecke prime scans

# %%
import numpy as np

from halfmod import QuadraticChar, find_hecke_primes, hurwitz_tally, overpartition_tally, trace_tally
from halfmod.checks import lifted_theta_cubed

# %%
for p in (5, 11):
    for rep in (trace_tally(p, 10_000), hurwitz_tally(p, 10_000), overpartition_tally(p, 10_000)):
        counts = np.array([rep.counts[r] for r in range(p)])
        print(p, rep.label, counts, rep.all_residues_hit())

# %%
print(overpartition_tally(5, 2000).to_csv())

# %% [markdown]
# theta^4 of theta^3 mod 5: primes Q = -1 mod 20 kill it, Q = 1 mod 20 double it.
# Coefficients are computed lazily since the scan reaches index Q^2 * 50.

# %%
g = lifted_theta_cubed(5)
chi = QuadraticChar.trivial(4)
print(find_hecke_primes(g, 25, chi, 5, "annihilate", 200, (-1, 20)))
print(find_hecke_primes(g, 25, chi, 5, "double", 200, (1, 20)))
