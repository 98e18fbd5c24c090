import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stepwell.errors import BracketError, DegeneratePointError, InvalidInputError, UnsupportedConfigurationError
from stepwell.exact import (
    WellConfig,
    action,
    energy_point,
    exact_roots,
    gamma0,
    invert_action,
    momentum_from_action,
    printed_momentum_formula,
    reflection,
    residual,
    separator,
    spectral_function,
    weyl,
)

W = WellConfig(1.0, 1.0, 25.0)
# benchmark roots for L1 = L2 = 1, V = 25
S1, S2, S17 = 2.5958787201295728, 4.9455316914381690, 53.403119615030526

wells = st.builds(
    WellConfig,
    st.floats(0.2, 3.0),
    st.floats(0.2, 3.0),
    st.floats(0.0, 60.0),
)


def mp_root(n, well, dps=40):
    """High-precision root of the matching condition in action space (independent oracle)."""
    mpmath.mp.dps = dps
    L1, L2, V = (mpmath.mpf(x) for x in (well.L1, well.L2, well.V))

    def f(k):
        d = k * k - V
        if d > 0:
            q = mpmath.sqrt(d)
            return mpmath.sin(L1 * k) * mpmath.cos(L2 * q) * q + k * mpmath.cos(L1 * k) * mpmath.sin(L2 * q)
        q = mpmath.sqrt(-d)
        return mpmath.sin(L1 * k) * mpmath.cosh(L2 * q) * q + k * mpmath.cos(L1 * k) * mpmath.sinh(L2 * q)

    def S_of(k):
        return L1 * k + L2 * mpmath.sqrt(max(k * k - V, 0))

    lo, hi = mpmath.mpf(invert_action(separator(n), well)), mpmath.mpf(invert_action(math.pi * (n + 0.5), well))
    k = mpmath.findroot(f, (lo, hi), solver="anderson")
    return float(S_of(k)), float(k)


def test_energy_points():
    p = energy_point(26.0, W)
    assert p.branch == "above" and p.k == pytest.approx(math.sqrt(26)) and p.kappa == pytest.approx(1.0)
    p = energy_point(9.0, W)
    assert p.branch == "below" and p.k == 3.0 and p.varkappa == 4.0
    with pytest.raises(DegeneratePointError):
        energy_point(25.0, W)
    with pytest.raises(InvalidInputError):
        energy_point(-1.0, W)


def test_reflection_limits():
    assert abs(reflection(1e12, W)) < 1e-10
    r = reflection(9.0, W)
    assert abs(r) == pytest.approx(1.0, abs=1e-15)
    # unit-modulus phase tied to the staircase offset
    assert r == pytest.approx(np.exp(-2j * math.pi * gamma0(3.0, W)), abs=1e-14)


@settings(max_examples=200)
@given(st.floats(1e-3, 1e4).filter(lambda E: abs(E - 25.0) > 1e-9))
def test_unitarity(E):
    r = reflection(E, W)
    if E > 25:
        t2 = 1 - r * r
        assert r * r + t2 == pytest.approx(1.0, abs=1e-14)
        k, kappa = math.sqrt(E), math.sqrt(E - 25)
        # flux-normalised transmission probability agrees with 1 - r^2
        assert 4 * k * kappa / (k + kappa) ** 2 == pytest.approx(t2, abs=1e-14)
        assert r == pytest.approx(25.0 / (k + kappa) ** 2, abs=1e-14)
    else:
        assert abs(r) ** 2 == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize(
    "E, well, S",
    [
        (25.0, W, 5.0),
        (26.0, W, math.sqrt(26) + 1),
        (9.0, WellConfig(2.0, 1.0, 25.0), 6.0),
    ],
)
def test_action_values(E, well, S):
    assert action(E, well) == pytest.approx(S, abs=1e-15)
    assert well.S_crit == well.L1 * 5.0


@given(wells, st.floats(1e-3, 1e4), st.floats(1e-3, 1e4))
def test_action_monotone(well, E1, E2):
    lo, hi = sorted((E1, E2))
    assert action(lo, well) <= action(hi, well)


@given(wells)
def test_action_continuous_at_step(well):
    V = max(well.V, 1e-6)
    well = WellConfig(well.L1, well.L2, V)
    eps = 1e-10 * V
    # kappa grows like sqrt(E - V) just above the step
    bound = 1.01 * (well.L2 * math.sqrt(eps) + well.L1 * eps / math.sqrt(V)) + 1e-12
    assert abs(action(V + eps, well) - action(V - eps, well)) <= bound


@settings(max_examples=300)
@given(wells, st.floats(1e-3, 300.0))
def test_round_trip_momentum(well, k):
    S = action(k * k, well)
    assert abs(invert_action(S, well) - k) <= 1e-12 * max(1.0, k)
    if well.symmetric or S <= well.S_crit:
        assert abs(momentum_from_action(S, well) - k) <= 1e-12 * max(1.0, k)


@settings(max_examples=300)
@given(wells, st.floats(1e-3, 300.0))
def test_round_trip_action(well, S):
    k = invert_action(S, well)
    # dS/dk diverges at the step, so keep clear of it
    if k * k > well.V and well.L2 * math.sqrt(k * k - well.V) < 1e-2:
        return
    assert abs(action(k * k, well) - S) <= 1e-12 * max(1.0, S)


def test_invert_action_vectorised():
    S = np.linspace(0.5, 80, 50)
    k = invert_action(S, WellConfig(2.0, 1.0, 10.0))
    assert np.allclose(action(k * k, WellConfig(2.0, 1.0, 10.0)), S, atol=1e-12)


@pytest.mark.parametrize("n, S", [(1, math.pi / 2), (2, 3 * math.pi / 2), (17, 33 * math.pi / 2)])
def test_separator(n, S):
    assert separator(n) == pytest.approx(S, abs=1e-15)


def test_separator_rejects():
    with pytest.raises(InvalidInputError):
        separator(0)


def test_benchmark_roots():
    # published digits carry errors up to about 3e-11
    got = [lv.S for lv in exact_roots(1, 17, W)]
    assert got[0] == pytest.approx(S1, abs=1e-10)
    assert got[1] == pytest.approx(S2, abs=1e-10)
    assert got[16] == pytest.approx(S17, abs=1e-10)


@pytest.mark.parametrize("well", [W, WellConfig(2.0, 1.0, 10.0), WellConfig(0.5, 1.7, 40.0)])
def test_roots_against_mpmath(well):
    for lv in exact_roots(1, 25, well):
        S, k = mp_root(lv.n, well)
        assert lv.S == pytest.approx(S, abs=1e-12)
        assert lv.k == pytest.approx(k, abs=1e-12)
        assert lv.in_range


def test_residuals_vanish_at_roots():
    assert abs(residual(S2, 2, W)) < 1e-10
    k17 = invert_action(S17, W)
    assert abs(residual(k17, 17, W)) < 1e-10
    for lv in exact_roots(1, 30, W):
        assert abs(residual(lv.k, lv.n, W)) < 1e-10


def test_residual_plain_well():
    well = WellConfig(1.0, 1.0, 0.0)
    k = np.linspace(0.3, 20, 17)
    assert np.allclose([residual(x, 1, well) for x in k], np.sin(2 * k) * (1 - 0.0), atol=1e-15)


def test_plain_well_roots():
    for V in (0.0, 1e-8):
        levels = exact_roots(1, 20, WellConfig(1.0, 1.0, V))
        assert max(abs(lv.S - math.pi * lv.n) for lv in levels) < 1e-4


def test_spectral_function_continuous_at_step():
    k = 5.0
    left, mid, right = spectral_function([k - 1e-9, k, k + 1e-9], W)
    assert abs(left - mid) < 1e-7 and abs(right - mid) < 1e-7


@pytest.mark.parametrize("well", [W, WellConfig(2.0, 1.0, 10.0), WellConfig(1.0, 3.0, 100.0)])
def test_one_sign_change_per_cell(well):
    # sample each separator cell densely in action and count sign flips
    for n in range(1, 201):
        S = np.linspace(separator(n), math.pi * (n + 0.5), 64)
        f = spectral_function(invert_action(S, well), well)
        assert np.count_nonzero(np.diff(np.sign(f))) == 1, n


def test_bracket_failure_reported(monkeypatch):
    import stepwell.exact as ex

    monkeypatch.setattr(ex, "spectral_function", lambda k, well: 1.0)
    with pytest.raises(BracketError) as info:
        ex.exact_roots(3, 3, W)
    assert info.value.interval == pytest.approx((2.5 * math.pi, 3.5 * math.pi))


def test_weyl_offsets():
    assert weyl(10.0, W).gamma0 == 0.5
    assert gamma0(5.0 - 1e-12, W) < 1e-6
    assert gamma0(math.pi / 2, W) == pytest.approx(0.398, abs=5e-4)
    d = weyl(math.pi / 2, W)
    assert d.Nbar == pytest.approx(0.5 - d.gamma0)
    # the full form keeps the exponentially small corrections
    assert gamma0(math.pi / 2, W, "full") > gamma0(math.pi / 2, W)


@pytest.mark.parametrize("S, k", [(2.605, 2.605), (5.1434, 5.0019), (S17, 26.9357)])
def test_momentum_from_action(S, k):
    assert momentum_from_action(S, W) == pytest.approx(k, abs=1e-4)


def test_printed_inversion_gives_kappa():
    k = momentum_from_action(S17, W)
    assert printed_momentum_formula(S17, W) == pytest.approx(math.sqrt(k * k - 25.0), abs=1e-12)


def test_asymmetric_closed_form_refused():
    with pytest.raises(UnsupportedConfigurationError):
        momentum_from_action(30.0, WellConfig(2.0, 1.0, 10.0))
    assert momentum_from_action(3.0, WellConfig(2.0, 1.0, 10.0)) == 1.5


@pytest.mark.parametrize("kw", [dict(L1=0.0), dict(L2=-1.0), dict(V=-1.0), dict(V=float("nan"))])
def test_invalid_wells(kw):
    with pytest.raises(InvalidInputError):
        WellConfig(**kw)
