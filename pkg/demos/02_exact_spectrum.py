"""Exact spectrum by bracketed bisection.

Every action level sits in its own cell (pi(n-1/2), pi(n+1/2)), so root
finding needs no initial guesses.  Levels under the step behave like a
well of width L1, those far above like a well of width L1+L2.
"""

import math

import numpy as np

from stepwell import WellConfig, exact_roots, residual

well = WellConfig(L1=1.0, L2=1.0, V=25.0)
levels = exact_roots(1, 20, well)

# %% the table
print(f"S_crit = {well.S_crit}")
print(" n            S_n              k_n    side   residual")
for lv in levels:
    side = "below" if lv.E < well.V else "above"
    print(f"{lv.n:2d}  {lv.S:.15f}  {lv.k:15.10f}  {side}  {residual(lv.k, lv.n, well):+.1e}")

# %% deviation from the plain well
dev = np.array([lv.S - math.pi * lv.n for lv in levels])
print("\nS_n - pi n:", np.array2string(dev, precision=4))
