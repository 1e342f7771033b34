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
# # Hecke operators on half-integral weight and the theta lift

# %%
from halfmod import QuadraticChar, hecke_half, jacobi_theta, rc_bracket1, theta_lift
from halfmod.operators import bracket_theta_unit
from halfmod.qseries import delta_series, eisenstein

chi = QuadraticChar.trivial(4)

# %% [markdown]
# theta^3 is an eigenform of T(Q^2) with eigenvalue Q + 1.

# %%
N = 3000
T3 = jacobi_theta(N) ** 3
for Q in (3, 5, 7, 11):
    img = hecke_half(T3, Q, 1, chi)
    print(Q, all(img[n] == (Q + 1) * T3[n] for n in range(img.prec)))

# %% [markdown]
# The first Rankin-Cohen bracket with E_(p-1) agrees with theta mod p up to a unit.

# %%
T = jacobi_theta(500)
print(rc_bracket1(eisenstein(4, 500), 8, T, 1)[1])  # w is twice the weight
for p in (5, 7):
    print(p, [bracket_theta_unit(p, f, w) for f, w in ((T, 1), (T**3, 3), (delta_series(500), 24))])

# %%
g = theta_lift(T3, 5)
print([g[n] for n in range(20)])
