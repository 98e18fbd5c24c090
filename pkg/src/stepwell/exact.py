"""
Exact spectrum of the infinite square well with an internal step.

Units: hbar = 1, 2m = 1, so k = sqrt(E).  The left section (length L1)
sits at zero potential, the right one (length L2) at height V.

The natural spectral variable is the action S = L1*k + L2*kappa above the
step and S = L1*k below it.  Quantum action values are locked inside the
separator cells (pi*(n - 1/2), pi*(n + 1/2)), which turns root finding into
plain bracketed bisection.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import BracketError, DegeneratePointError, InvalidInputError, UnsupportedConfigurationError


@dataclass(frozen=True)
class WellConfig:
    """Geometry and step height of the well.

    ``V = 0`` is accepted and describes the plain infinite well of width
    ``L1 + L2``.
    """

    L1: float = 1.0
    L2: float = 1.0
    V: float = 25.0

    def __post_init__(self):
        for name in ("L1", "L2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be a positive length, got {value!r}")
        if not (math.isfinite(self.V) and self.V >= 0):
            raise InvalidInputError(f"V must be a non-negative step height, got {self.V!r}")

    @property
    def L(self) -> float:
        return self.L1 + self.L2

    @property
    def S_crit(self) -> float:
        """Action at E = V, where the orbit structure switches."""
        return self.L1 * math.sqrt(self.V)

    @property
    def symmetric(self) -> bool:
        return self.L1 == self.L2


@dataclass(frozen=True)
class EnergyPoint:
    E: float
    k: float
    branch: str
    kappa: float | None = None
    varkappa: float | None = None


@dataclass(frozen=True)
class Level:
    """One quantum level; `order` is the truncation used (0 for the oracle)."""

    n: int
    S: float
    k: float
    E: float
    method: str
    order: int = 0

    @property
    def in_range(self) -> bool:
        return math.pi * (self.n - 0.5) < self.S < math.pi * (self.n + 0.5)


@dataclass(frozen=True)
class WeylData:
    gamma0: float
    Nbar: float


def _check_energy(E, well):
    if not E > 0:
        raise InvalidInputError(f"energy must be positive, got {E!r}")
    if E == well.V:
        raise DegeneratePointError(f"E = V = {E!r} is a branch point of the spectral equations")


def energy_point(E: float, well: WellConfig) -> EnergyPoint:
    _check_energy(E, well)
    k = math.sqrt(E)
    if E > well.V:
        return EnergyPoint(E, k, "above", kappa=math.sqrt(E - well.V))
    return EnergyPoint(E, k, "below", varkappa=math.sqrt(well.V - E))


def reflection(E: float, well: WellConfig):
    """Reflection amplitude at the step seen from the left section.

    Real ``(k - kappa)/(k + kappa)`` above the step.  Below it, the analytic
    continuation ``kappa -> i*varkappa`` on the decaying branch, a unit-modulus
    number ``exp(-2i*pi*gamma0)``.
    """
    p = energy_point(E, well)
    if p.branch == "above":
        return (p.k - p.kappa) / (p.k + p.kappa)
    return complex(p.k, -p.varkappa) / complex(p.k, p.varkappa)


def action(E, well: WellConfig):
    """Action S(E) over the classically allowed region; accepts arrays."""
    E_arr = np.asarray(E, dtype=float)
    if np.any(~(E_arr > 0)):
        raise InvalidInputError("energy must be positive")
    k = np.sqrt(E_arr)
    S = well.L1 * k + well.L2 * np.sqrt(np.clip(E_arr - well.V, 0.0, None))
    return float(S) if S.ndim == 0 else S


def separator(n: int) -> float:
    """Lower edge pi*(n - 1/2) of the cell holding the n-th action value."""
    if n < 1:
        raise InvalidInputError(f"separator index must be >= 1, got {n!r}")
    return math.pi * (n - 0.5)


def residual(k: float, n: int, well: WellConfig) -> float:
    """LHS - RHS of the spectral equation that applies at momentum `k`.

    Above the step: ``sin(L1 k + L2 kappa) - r sin(L1 k - L2 kappa)``.
    Below the step the index `n` of the separator cell fixes the sign of the
    right-hand side, so it must be supplied.
    """
    if not k > 0:
        raise InvalidInputError(f"momentum must be positive, got {k!r}")
    E = k * k
    _check_energy(E, well)
    L1, L2, V = well.L1, well.L2, well.V
    if E > V:
        kappa = math.sqrt(E - V)
        r = (k - kappa) / (k + kappa)
        return math.sin(L1 * k + L2 * kappa) - r * math.sin(L1 * k - L2 * kappa)
    x = math.sqrt(V - E)
    e = math.exp(-2.0 * L2 * x)
    rhs = (-1) ** (n + 1) * k * (1.0 - e) / math.sqrt(V * (1.0 + e * e) + 2.0 * (x * x - k * k) * e)
    return math.sin(L1 * k) - rhs


def _sinc(x):
    return np.sinc(x / np.pi)


def _tanhc(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x == 0, 1.0, x)
    return np.where(x == 0, 1.0, np.tanh(safe) / safe)


def spectral_function(k, well: WellConfig):
    """Smooth matching function whose zeros are exactly the eigenmomenta.

    Above the step ``sin(L1 k) cos(L2 kappa) + k L2 cos(L1 k) sinc(L2 kappa)``;
    below it the same with hyperbolic functions, divided by
    ``cosh(L2 varkappa)``.  Both sides tend to ``sin(L1 k) + k L2 cos(L1 k)``
    at E = V, so unlike `residual` it has no spurious zero at the branch point
    and needs no cell index.
    """
    k = np.asarray(k, dtype=float)
    L1, L2, V = well.L1, well.L2, well.V
    d = k * k - V
    q = np.sqrt(np.abs(d)) * L2
    above = np.sin(L1 * k) * np.cos(q) + k * L2 * np.cos(L1 * k) * _sinc(q)
    below = np.sin(L1 * k) + k * L2 * np.cos(L1 * k) * _tanhc(q)
    out = np.where(d >= 0, above, below)
    return float(out) if out.ndim == 0 else out


def _k_above(S, well: WellConfig):
    """Momentum for actions at or above S_crit (array in, array out)."""
    S = np.asarray(S, dtype=float)
    L1, L2, V = well.L1, well.L2, well.V
    if well.symmetric:
        a = S / L1
        return (a * a + V) / (2.0 * a)
    # S(kappa) = L1 sqrt(kappa^2 + V) + L2 kappa is convex and increasing, so
    # Newton iterates sit right of the root after one step and then decrease
    # monotonically.
    kappa = S / (L1 + L2)
    for _ in range(100):
        root = np.sqrt(kappa * kappa + V)
        step = (L1 * root + L2 * kappa - S) / (L1 * kappa / root + L2)
        new = np.maximum(kappa - step, 0.0)
        if np.all(np.abs(new - kappa) <= 4 * np.finfo(float).eps * np.maximum(new, 1.0)):
            kappa = new
            break
        kappa = new
    return np.sqrt(kappa * kappa + V)


def invert_action(S, well: WellConfig):
    """Numeric inverse of `action` returning k; valid for any well, accepts arrays."""
    S_arr = np.asarray(S, dtype=float)
    if np.any(~(S_arr > 0)):
        raise InvalidInputError("action must be positive")
    k = np.where(S_arr <= well.S_crit, S_arr / well.L1, _k_above(np.maximum(S_arr, well.S_crit), well))
    return float(k) if k.ndim == 0 else k


def momentum_from_action(S: float, well: WellConfig) -> float:
    """Closed-form inverse of the action.

    Below the step ``k = S/L1``.  Above it only equal-length wells invert in
    closed form: with ``s = S/L1``, ``k = (s**2 + V)/(2 s)``.  Other
    geometries raise; use `invert_action` for them.
    """
    if not S > 0:
        raise InvalidInputError(f"action must be positive, got {S!r}")
    if S <= well.S_crit:
        return S / well.L1
    if not well.symmetric:
        raise UnsupportedConfigurationError(
            "closed-form momentum extraction above the step needs L1 == L2; use invert_action"
        )
    s = S / well.L1
    return (s * s + well.V) / (2.0 * s)


def printed_momentum_formula(S: float, well: WellConfig) -> float:
    """``(s**2 - V)/(2 s)`` with ``s = S/L1``: the right-section momentum kappa, not k."""
    s = S / well.L1
    return (s * s - well.V) / (2.0 * s)


def gamma0(S, well: WellConfig, form: str = "asymptotic"):
    """Phase offset of the smoothed staircase.

    1/2 above the step.  Below it, ``arctan(varkappa/k)/pi`` in the
    asymptotic form, which is the one consistent with the ghost-orbit sum,
    or ``arctan(varkappa (1+e)/(k (1-e)))/pi`` with ``e = exp(-2 L2 varkappa)``
    in the full form.
    """
    if form not in ("asymptotic", "full"):
        raise InvalidInputError(f"unknown gamma0 form {form!r}")
    S = np.asarray(S, dtype=float)
    if np.any(~(S > 0)):
        raise InvalidInputError("action must be positive")
    k = S / well.L1
    x = np.sqrt(np.clip(well.V - k * k, 0.0, None))
    if form == "asymptotic":
        below = np.arctan2(x, k) / np.pi
    else:
        e = np.exp(-2.0 * well.L2 * x)
        one_minus = -np.expm1(-2.0 * well.L2 * x)
        ratio = np.where(x > 0, x / np.where(x > 0, one_minus, 1.0), 1.0 / (2.0 * well.L2))
        below = np.arctan2(ratio * (1.0 + e), k) / np.pi
    out = np.where(S > well.S_crit, 0.5, below)
    return float(out) if out.ndim == 0 else out


def weyl(S: float, well: WellConfig, form: str = "asymptotic") -> WeylData:
    """Smoothed staircase ``Nbar = S/pi - gamma0`` at action `S`."""
    g = gamma0(S, well, form)
    return WeylData(gamma0=g, Nbar=S / math.pi - g)


def exact_roots(n_from: int, n_to: int, well: WellConfig, tol: float = 1e-13) -> list[Level]:
    """Oracle levels n_from..n_to by bisection inside the separator cells.

    Bisection runs in k on `spectral_function` until the bracket is narrower
    than `tol` in action (or no float lies strictly inside), then a single
    secant step polishes the midpoint when it stays inside the bracket.
    """
    if not (1 <= n_from <= n_to):
        raise InvalidInputError(f"need 1 <= n_from <= n_to, got {n_from}..{n_to}")
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    levels = []
    for n in range(n_from, n_to + 1):
        S_lo, S_hi = separator(n), math.pi * (n + 0.5)
        k_lo, k_hi = invert_action(S_lo, well), invert_action(S_hi, well)
        f_lo, f_hi = spectral_function(k_lo, well), spectral_function(k_hi, well)
        if f_lo == 0 or f_hi == 0 or (f_lo > 0) == (f_hi > 0):
            raise BracketError(f"no sign change of the spectral function for n={n}", (S_lo, S_hi))
        while action(k_hi * k_hi, well) - action(k_lo * k_lo, well) > tol:
            k_mid = 0.5 * (k_lo + k_hi)
            if not (k_lo < k_mid < k_hi):
                break
            f_mid = spectral_function(k_mid, well)
            if f_mid == 0:
                k_lo = k_hi = k_mid
                break
            if (f_mid > 0) == (f_lo > 0):
                k_lo, f_lo = k_mid, f_mid
            else:
                k_hi, f_hi = k_mid, f_mid
        k = 0.5 * (k_lo + k_hi)
        if f_hi != f_lo:
            k_sec = k_lo - f_lo * (k_hi - k_lo) / (f_hi - f_lo)
            if k_lo <= k_sec <= k_hi:
                k = k_sec
        E = k * k
        levels.append(Level(n=n, S=action(E, well), k=k, E=E, method="oracle", order=0))
    return levels
