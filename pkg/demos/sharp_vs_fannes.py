# %% [markdown]
# # Comparing the continuity bounds
#
# Three upper bounds on the entropy gap as a function of the trace distance
# `t`: the classic Fannes form (only valid for small `t`), its weak variant
# valid everywhere, and the sharp bound `t log2(d-1) + H(t)`.

# %%
import numpy as np

from entropy_continuity import (
    FANNES_T_MAX,
    emit_bound_table,
    extremal_pair,
    fannes_bound,
    sharp_bound,
    trace_distance,
    von_neumann_entropy,
)

# %%
for row in emit_bound_table(4, np.linspace(0.0, 1.0, 6)):
    print(row)

# %% [markdown]
# Where the Fannes form is defined it always sits strictly above the sharp
# bound. Both vanish as t goes to 0, so the margin is smallest there.

# %%
ts = np.linspace(1e-4, FANNES_T_MAX, 400)
for d in (2, 4, 8):
    margin = np.array([fannes_bound(d, t) - sharp_bound(d, t) for t in ts])
    print(f"d={d}: smallest margin {margin.min():.4f} at t={ts[margin.argmin()]:.4f}")

# %% [markdown]
# The sharp bound is attained: a pure state against a state with weight
# `1 - t` on the same vector and the rest spread evenly.

# %%
for t in (0.1, 0.5, 0.9):
    rho, sigma = extremal_pair(5, t)
    gap = abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma))
    print(f"t={t}: T={trace_distance(rho, sigma):.12f}  gap={gap:.12f}  bound={sharp_bound(5, t):.12f}")
