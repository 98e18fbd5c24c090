"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured numbers
before asserting.  ``python tests/test_acceptance.py`` runs the same checks
without pytest and prints just those lines.
"""

import itertools
import math
import sys

import numpy as np
import pytest

from stepwell.exact import (
    WellConfig,
    action,
    exact_roots,
    invert_action,
    momentum_from_action,
    reflection,
    residual,
    separator,
    spectral_function,
)
from stepwell.poe import TABLE1, convergence_report, partial_sums, weyl_term
from stepwell.scaling import max_error, scaling_config, validate_s0_reading
from stepwell.symbolic import (
    class_counts,
    itinerary_probability,
    orbit_class,
    weight_signature,
)

W = WellConfig(1.0, 1.0, 25.0)
# collected here and printed in the pytest terminal summary (see conftest.py)
LINES = []


def _emit(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    LINES.append(line)
    print(line)
    return ok


def criterion_1():
    got = {lv.n: lv.S for lv in exact_roots(1, 17, W)}
    errs = {n: abs(got[n] - TABLE1[n]["exact"]) for n in (1, 2, 17)}
    ok = max(errs.values()) <= 1e-10
    return _emit("1 exact roots", ok, ", ".join(f"n={n} err={e:.1e}" for n, e in errs.items()) + " (tol 1e-10)")


def criterion_2():
    errs = {n: abs(weyl_term(n, W) - TABLE1[n][0]) for n in (1, 2, 17)}
    low = WellConfig(1.0, 1.0, 0.5)
    above = max(abs(weyl_term(n, low) - math.pi * n) for n in range(2, 60))
    above = max(above, max(abs(weyl_term(n, W) - math.pi * n) for n in range(3, 60)))
    ok = max(errs.values()) <= 5e-4 and above <= 1e-12
    detail = ", ".join(f"n={n} err={e:.1e}" for n, e in errs.items())
    return _emit("2 Weyl column", ok, f"{detail} (tol 5e-4); above-step max |S0-pi n|={above:.1e} (tol 1e-12)")


def criterion_3():
    reports = {r.n: r for r in convergence_report([1, 2, 17], 3, W)}
    misses = []
    worst = 0.0
    for n in (1, 2, 17):
        for m in (1, 2, 3):
            err = abs(reports[n].orders[m][1] - TABLE1[n][m])
            worst = max(worst, err)
            if err > 5e-3:
                misses.append(f"(n={n}, m={m}) got {reports[n].orders[m][1]:.4f} vs {TABLE1[n][m]} err={err:.4f}")
    flag = reports[2].branch_mismatch[3]
    ok = not misses and flag
    detail = f"worst err={worst:.4f} (tol 5e-3), n=2 m=3 branch flag={flag}"
    if misses:
        detail += "; outside tolerance: " + "; ".join(misses)
    return _emit("3 expansion columns", ok, detail)


def criterion_4():
    k1 = momentum_from_action(TABLE1[1][3], W)
    k2 = momentum_from_action(TABLE1[2][3], W)
    k17 = momentum_from_action(TABLE1[17]["exact"], W)
    res17 = abs(residual(k17, 17, W))
    ok = abs(k1 - 2.605) <= 1e-3 and abs(k2 - 5.0019) <= 1e-3 and abs(k17 - 26.9357) <= 1e-4 and res17 < 1e-8
    detail = (
        f"k1={k1:.4f}, k2={k2:.4f} (5.0019 +- 1e-3); k17 derived={k17:.4f} vs printed 26.4689 "
        f"(diff {k17 - 26.4689:.4f}), residual at derived k17={res17:.1e} (tol 1e-8)"
    )
    return _emit("4 momentum extraction", ok, detail)


def criterion_5():
    rows = class_counts(16)
    counts_ok = all(r["classes"] == r["burnside"] and r["prime"] == r["mobius"] for r in rows)
    rates = [r["proliferation_exponent"] for r in rows if 12 <= r["m"] <= 16]
    ok = counts_ok and all(0.66 <= x <= 0.70 for x in rates)
    return _emit(
        "5 combinatorics",
        ok,
        f"enumeration matches closed forms for m<=16: {counts_ok}; rates m=12..16 in "
        f"[{min(rates):.4f}, {max(rates):.4f}] (window [0.66, 0.70])",
    )


def criterion_6():
    well = WellConfig(1.0, 1.0, 1e-8)
    oracle = max(abs(lv.S - math.pi * lv.n) for lv in exact_roots(1, 20, well))
    expansion = max(abs(S - math.pi * n) for n in range(1, 21) for S in partial_sums(n, 4, well))
    ok = oracle < 1e-4 and expansion < 1e-4
    return _emit("6 plain-well limit", ok, f"oracle max dev={oracle:.1e}, expansion m<=4 max dev={expansion:.1e} (tol 1e-4)")


def criterion_7():
    errs = {lam: max_error(scaling_config(lam), 8) for lam in (0.3, 0.5, 0.75)}
    reading = validate_s0_reading()
    ok = max(errs.values()) <= 1e-3 and reading["reading"] == "Omega0"
    detail = ", ".join(f"lambda={lam} max err={e:.2e}" for lam, e in errs.items())
    return _emit("7 scaling closed form", ok, f"{detail} (tol 1e-3, m=8, n=1..20); S0 reading={reading['reading']}")


def criterion_8():
    rng = np.random.default_rng(20260)
    checks = {}

    breaks = 0
    for well in (W, WellConfig(2.0, 1.0, 10.0), WellConfig(0.7, 1.9, 60.0)):
        for n in range(1, 201):
            S = np.linspace(separator(n), math.pi * (n + 0.5), 48)
            f = spectral_function(invert_action(S, well), well)
            breaks += np.count_nonzero(np.diff(np.sign(f))) != 1
    checks["separator bracketing n<=200"] = breaks == 0

    E = rng.uniform(25.0 + 1e-6, 1e4, 2000)
    rr = np.array([reflection(e, W) for e in E])
    k, kap = np.sqrt(E), np.sqrt(E - 25.0)
    checks["r^2 + t^2 = 1"] = bool(np.max(np.abs(rr**2 + 4 * k * kap / (k + kap) ** 2 - 1)) <= 1e-14)

    mono = True
    for _ in range(30):
        well = WellConfig(*rng.uniform(0.2, 3.0, 2), rng.uniform(0, 60))
        grid = np.sort(rng.uniform(1e-3, 1e3, 500))
        S = action(grid, well)
        mono &= bool(np.all(np.diff(S) >= 0))
        V = max(well.V, 1e-6)
        mono &= abs(action(V * (1 + 1e-12), well) - action(V * (1 - 1e-12), well)) < 1e-4 * math.sqrt(V) + 1e-9
    checks["action monotone/continuous"] = mono

    worst = 0.0
    for _ in range(30):
        well = WellConfig(*rng.uniform(0.2, 3.0, 2), rng.uniform(0, 60))
        kk = rng.uniform(1e-3, 300, 200)
        back = invert_action(action(kk * kk, well), well)
        worst = max(worst, float(np.max(np.abs(back - kk) / np.maximum(kk, 1.0))))
    checks["round trip 1e-12"] = worst <= 1e-12

    prob = max(
        abs(sum(itinerary_probability(s, "".join(p), r2) for p in itertools.product("LR", repeat=m)) - 1)
        for m in range(1, 13)
        for s in "LR"
        for r2 in (0.0, 0.17, 0.5, 0.93)
    )
    checks["probability conservation m<=12"] = prob <= 1e-12

    rot = True
    for _ in range(200):
        m = int(rng.integers(1, 11))
        code = "".join(rng.choice(list("LR"), m))
        i = int(rng.integers(0, m))
        a, b = orbit_class(code), orbit_class(code[i:] + code[:i])
        rot &= a == b and weight_signature(a) == weight_signature(b)
    checks["rotation invariance"] = rot

    ok = all(checks.values())
    return _emit("8 property suites", ok, ", ".join(f"{k}={'ok' if v else 'BROKEN'}" for k, v in checks.items()))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
