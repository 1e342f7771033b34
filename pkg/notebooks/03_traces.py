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
# # Traces of singular moduli
#
# t_m(d) computed from CM points, compared with the coefficients of the weight 3/2 forms.

# %%
import time

from halfmod import h_series, reduced_forms, trace_numeric
from halfmod.moduli import B_m_table, smallest_fp_alpha

# %%
print(reduced_forms(23))
print(trace_numeric(1, 3), trace_numeric(1, 23))

# %%
t0 = time.time()
h = h_series(101)
worst = 0.0
for d in range(3, 101):
    if d % 4 in (0, 3):
        tv = trace_numeric(1, d)
        assert tv.value == -h[d]
        worst = max(worst, tv.residual)
print(f"t_1 vs -h up to 100: worst rounding residual {worst:.1e}, {time.time() - t0:.1f}s")

# %%
B2 = B_m_table(2, 40)
print([trace_numeric(2, d).value + B2[d] for d in (3, 4, 7, 8)])

# %%
print(smallest_fp_alpha(5, 200), smallest_fp_alpha(11, 300))
