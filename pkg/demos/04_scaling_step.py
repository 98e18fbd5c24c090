"""Scaling step V = lam E.

With the step height tied to the energy, reflection amplitudes and orbit
actions per unit k freeze, and the orbit sum becomes a closed-form series
for k_n.  It converges slowly (roughly like 1/m), which the transfer-matrix
route makes cheap to watch at large m.
"""

from stepwell.scaling import max_error, scaling_config, validate_s0_reading

print("S0 reading check:", validate_s0_reading())

# %% max |k_n - bisection| over n = 1..20
orders = (0, 4, 8, 16, 32, 64, 128)
print("lambda " + "".join(f"{f'm={m}':>10}" for m in orders))
for lam in (0.3, 0.5, 0.75):
    cfg = scaling_config(lam)
    errs = [max_error(cfg, m, route="transfer") for m in orders]
    print(f"{lam:6.2f} " + "".join(f"{e:10.2e}" for e in errs))
