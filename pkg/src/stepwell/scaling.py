"""
Scaling step: V = lam * E with 0 < lam < 1.

The velocity ratio beta = sqrt(1 - lam), the reflection coefficient and both
section actions per unit k are then energy independent, the spectral
equation becomes ``sin(Omega0 k) = r_sc sin(omega k)`` and the cell
integrals of the orbit sum are elementary, giving a closed-form series::

    k_n = pi n / Omega0
          - (2/pi) sum_p (1/S0_p) sum_nu A_p**nu / nu**2 sin(nu w_p / 2) sin(nu w_p n)

with ``S0_p = 2 n_L L1 + 2 n_R beta L2`` and ``w_p = pi S0_p / S0``.  Doing
the cell integral over ``S = Omega0 k`` shows that ``S0 = Omega0``;
`validate_s0_reading` confirms it against bisection roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import BracketError, InvalidInputError
from .exact import Level
from .symbolic import composition_weights, necklaces, weight_signature

S0_READINGS = {"Omega0": 1.0, "2*Omega0": 2.0}


@dataclass(frozen=True)
class ScalingConfig:
    lam: float
    L1: float = 1.0
    L2: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.lam < 1.0):
            raise InvalidInputError(f"scaling ratio must lie in (0, 1), got {self.lam!r}")
        for name in ("L1", "L2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be a positive length, got {value!r}")

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.lam)

    @property
    def r_sc(self) -> float:
        return (1.0 - self.beta) / (1.0 + self.beta)

    @property
    def Omega0(self) -> float:
        return self.L1 + self.beta * self.L2

    @property
    def omega(self) -> float:
        return self.L1 - self.beta * self.L2


def scaling_config(lam: float, L1: float = 1.0, L2: float = 1.0) -> ScalingConfig:
    return ScalingConfig(float(lam), float(L1), float(L2))


def scaling_residual(k, cfg: ScalingConfig):
    k = np.asarray(k, dtype=float)
    out = np.sin(cfg.Omega0 * k) - cfg.r_sc * np.sin(cfg.omega * k)
    return float(out) if out.ndim == 0 else out


def scaling_separators(n: int, cfg: ScalingConfig) -> float:
    """Separator (pi/Omega0)(n + 1/2); root n lies between separators n-1 and n."""
    if n < 0:
        raise InvalidInputError(f"separator index must be >= 0, got {n!r}")
    return math.pi / cfg.Omega0 * (n + 0.5)


def scaling_roots(n_from: int, n_to: int, cfg: ScalingConfig, tol: float = 1e-14) -> list[Level]:
    """Bisection roots of the scaling spectral equation (oracle)."""
    if not (1 <= n_from <= n_to):
        raise InvalidInputError(f"need 1 <= n_from <= n_to, got {n_from}..{n_to}")
    out = []
    for n in range(n_from, n_to + 1):
        lo, hi = scaling_separators(n - 1, cfg), scaling_separators(n, cfg)
        f_lo = scaling_residual(lo, cfg)
        if (f_lo > 0) == (scaling_residual(hi, cfg) > 0):
            raise BracketError(f"no sign change for scaling root n={n}", (lo, hi))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if not (lo < mid < hi):
                break
            f_mid = scaling_residual(mid, cfg)
            if f_mid == 0:
                lo = hi = mid
                break
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        k = 0.5 * (lo + hi)
        out.append(Level(n=n, S=cfg.Omega0 * k, k=k, E=k * k, method="oracle", order=0))
    return out


def _check_order(m):
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise InvalidInputError(f"truncation order must be a non-negative integer, got {m!r}")
    return int(m)


def _series_necklace(n, m, cfg, s0):
    r = cfg.r_sc
    total = 0.0
    # words of total length `order` grouped by order for a fixed summation sequence
    for order in range(1, m + 1):
        for length in range(1, order + 1):
            if order % length:
                continue
            nu = order // length
            for orbit in necklaces(length):
                if orbit.nu != 1:
                    continue
                a = weight_signature(orbit).evaluate(r)
                s0_p = 2 * orbit.n_L * cfg.L1 + 2 * orbit.n_R * cfg.beta * cfg.L2
                w_p = math.pi * s0_p / s0
                total = total + a ** nu / nu ** 2 * math.sin(nu * w_p / 2) * np.sin(nu * w_p * n) / s0_p
    return total


def _series_transfer(n, m, cfg, s0):
    total = 0.0
    for order in range(1, m + 1):
        weights = composition_weights(order, cfg.r_sc).real
        j = np.arange(order + 1)
        s0_w = 2 * j * cfg.L1 + 2 * (order - j) * cfg.beta * cfg.L2
        w = math.pi * s0_w / s0
        n_col = np.asarray(n, dtype=float)[..., None]
        total = total + np.sum(weights / s0_w * np.sin(w / 2) * np.sin(w * n_col), axis=-1) / order
    return total


def _kn_values(n, m, cfg, s0_reading="Omega0", route="necklace"):
    m = _check_order(m)
    if s0_reading not in S0_READINGS:
        raise InvalidInputError(f"unknown S0 reading {s0_reading!r}")
    s0 = S0_READINGS[s0_reading] * cfg.Omega0
    if route == "necklace":
        series = _series_necklace(n, m, cfg, s0)
    elif route == "transfer":
        series = _series_transfer(n, m, cfg, s0)
    else:
        raise InvalidInputError(f"unknown route {route!r}")
    return math.pi * np.asarray(n, dtype=float) / cfg.Omega0 - 2.0 / math.pi * series


def scaling_kn(n: int, m: int, cfg: ScalingConfig, s0_reading: str = "Omega0", route: str = "necklace") -> Level:
    """Closed-form order-m momentum k_n (all orbit pairs with nu * length <= m).

    ``route="necklace"`` sums prime orbits and their repetitions;
    ``route="transfer"`` sums the same words by left-swing count through the
    transfer-matrix trace and is not limited by the enumeration bound.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidInputError(f"level index must be a positive integer, got {n!r}")
    k = float(_kn_values(int(n), m, cfg, s0_reading, route))
    return Level(n=n, S=cfg.Omega0 * k, k=k, E=k * k, method="scaling", order=m)


def max_error(cfg: ScalingConfig, m: int, n_max: int = 20, s0_reading="Omega0", route="necklace") -> float:
    exact = np.array([lv.k for lv in scaling_roots(1, n_max, cfg)])
    approx = _kn_values(np.arange(1, n_max + 1), m, cfg, s0_reading, route)
    return float(np.max(np.abs(approx - exact)))


@lru_cache(maxsize=1)
def validate_s0_reading(lam: float = 0.5, m: int = 16, n_max: int = 20) -> dict:
    """Compare both S0 readings with bisection roots and keep the better one."""
    cfg = scaling_config(lam)
    errors = {name: max_error(cfg, m, n_max, name) for name in S0_READINGS}
    baseline = max_error(cfg, 0, n_max)
    reading = min(errors, key=errors.get)
    return {
        "reading": reading,
        "lambda": lam,
        "m": m,
        "max_error": errors,
        "leading_term_error": baseline,
        "improves_on_leading_term": errors[reading] < baseline,
    }
