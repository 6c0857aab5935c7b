# %% [markdown]
# # Walking through the classical reduction
#
# The quantum problem reduces to ordered probability vectors. The minimum of
# `H(q) - H(p)` over vectors at total variation `t` is found in two stages:
# first over the first coordinate of the difference, then over `p1`.

# %%
import numpy as np

from entropy_continuity import brute_force_max_diff, optimal_s1, sharp_bound, staged_minimum
from entropy_continuity.classical import p1_objective, s1_threshold

# %%
d, t = 5, 0.3
sm = staged_minimum(d, t)
print(sm)
print("minus sharp bound:", -sharp_bound(d, t))

# %% [markdown]
# The inner optimum over `s1` switches formula once `t` passes a threshold
# that depends on `p1`. Scanning `p1` over its feasible range `[0, 1 - t]`
# shows the outer objective decreasing all the way to the endpoint.

# %%
for x in np.linspace(0.0, 1.0 - t, 8):
    s1, value = optimal_s1(d, t, x)
    print(f"p1={x:.4f}  threshold={s1_threshold(d, x):.4f}  s1*={s1:.4f}  objective={p1_objective(d, t, x):.6f}")

# %% [markdown]
# Brute force on a grid of the 3-simplex agrees with the closed form.

# %%
res = brute_force_max_diff(3, 0.25, 0.01)
print(f"grid maximum {res.max_diff:.6f} vs sharp bound {sharp_bound(3, 0.25):.6f}")
print("maximiser:", res.argmax_p, res.argmax_q)
