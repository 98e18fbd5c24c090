"""
Symbolic dynamics of the step well.

Every periodic orbit is a cyclic word over {L, R}: one letter per swing
through the left or right section, one wall bounce per letter and one
scattering event at the step between consecutive letters.  Orbits are
classes of words under rotation (binary necklaces).  A class is stored
through its lexicographically smallest rotation, with ``L < R``.

Enumeration uses the Fredricksen-Kessler-Maiorana algorithm, which emits
necklaces in lexicographic order together with the length of their
primitive period, so repetition numbers come for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import InvalidInputError

MAX_LENGTH = 24
ALPHABET = "LR"


def _check_code(code) -> str:
    if not isinstance(code, str):
        try:
            code = "".join(code)
        except TypeError:
            raise InvalidInputError(f"orbit code must be a string over L/R, got {code!r}") from None
    if not code:
        raise InvalidInputError("orbit code must contain at least one letter")
    bad = set(code) - set(ALPHABET)
    if bad:
        raise InvalidInputError(f"orbit code letters must be L or R, got {sorted(bad)}")
    return code


def _check_length(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidInputError(f"code length must be a positive integer, got {m!r}")
    if m > MAX_LENGTH:
        raise InvalidInputError(f"code length {m} exceeds the enumeration bound {MAX_LENGTH}")
    return int(m)


def canonicalize(code) -> str:
    """Return the lexicographically smallest rotation of `code`."""
    code = _check_code(code)
    doubled = code + code
    m = len(code)
    return min(doubled[i:i + m] for i in range(m))


def repetition_number(code) -> int:
    """Number of times the primitive period of `code` repeats inside it."""
    code = _check_code(code)
    m = len(code)
    for p in range(1, m + 1):
        if m % p == 0 and code[:p] * (m // p) == code:
            return m // p
    return 1  # unreachable


@dataclass(frozen=True)
class WeightSignature:
    """Symbolic amplitude ``sign * r**(pow_r_left + pow_r_right) * t**pow_t``.

    ``pow_t`` is always even, so the transmission factor only ever needs
    ``t**2 = 1 - r**2``.
    """

    sign: int
    pow_r_left: int
    pow_r_right: int
    pow_t: int

    @property
    def pow_r(self) -> int:
        return self.pow_r_left + self.pow_r_right

    def evaluate(self, r, t2=None):
        """Numeric amplitude for reflection coefficient `r` (real or complex, scalar or array)."""
        if t2 is None:
            t2 = 1 - r * r
        return self.sign * r ** self.pow_r * t2 ** (self.pow_t // 2)

    def __str__(self) -> str:
        factors = []
        if self.pow_r:
            factors.append("r" if self.pow_r == 1 else f"r^{self.pow_r}")
        if self.pow_t:
            factors.append(f"t^{self.pow_t}")
        body = "*".join(factors) or "1"
        return ("-" if self.sign < 0 else "+") + body


@dataclass(frozen=True)
class OrbitClass:
    """A rotation class of orbit codes with its combinatorial data.

    sigma_L, sigma_R and tau count cyclic LL, RR and mixed adjacent pairs,
    i.e. left reflections, right reflections and transmissions at the step.
    """

    canonical: str
    length: int
    n_L: int
    n_R: int
    nu: int
    sigma_L: int
    sigma_R: int
    tau: int

    @property
    def wall_count(self) -> int:
        return self.length

    @property
    def is_prime(self) -> bool:
        return self.nu == 1

    @property
    def primitive(self) -> "OrbitClass":
        """The prime class this one repeats."""
        if self.nu == 1:
            return self
        return orbit_class(self.canonical[: self.length // self.nu])

    def repeated(self, nu: int) -> "OrbitClass":
        return orbit_class(self.canonical * nu)


def orbit_class(code) -> OrbitClass:
    """Build the OrbitClass of an arbitrary code (any rotation)."""
    code = _check_code(code)
    canon = canonicalize(code)
    return _class_from_canonical(canon, repetition_number(canon))


def _class_from_canonical(canon: str, nu: int) -> OrbitClass:
    m = len(canon)
    n_L = canon.count("L")
    pairs = [canon[i] + canon[(i + 1) % m] for i in range(m)]
    sigma_L = pairs.count("LL")
    sigma_R = pairs.count("RR")
    return OrbitClass(
        canonical=canon,
        length=m,
        n_L=n_L,
        n_R=m - n_L,
        nu=nu,
        sigma_L=sigma_L,
        sigma_R=sigma_R,
        tau=m - sigma_L - sigma_R,
    )


def weight_signature(orbit) -> WeightSignature:
    """Amplitude signature of the full (possibly repeated) code.

    Each wall bounce flips the sign and each right-side reflection carries
    ``-r``; left reflections carry ``+r`` and transmissions ``t``.
    """
    if not isinstance(orbit, OrbitClass):
        orbit = orbit_class(orbit)
    sign = -1 if (orbit.length + orbit.sigma_R) % 2 else 1
    return WeightSignature(sign, orbit.sigma_L, orbit.sigma_R, orbit.tau)


def _fkm(m: int):
    """Yield (word, period) for binary necklaces of length m in lexicographic order."""
    a = [0] * (m + 1)

    def gen(t, p):
        if t > m:
            if m % p == 0:
                yield a[1:], p
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        if a[t - p] == 0:
            a[t] = 1
            yield from gen(t + 1, t)

    yield from gen(1, 1)


@lru_cache(maxsize=32)
def necklaces(m: int) -> tuple[OrbitClass, ...]:
    """All rotation classes of length-`m` codes, ordered by canonical code."""
    m = _check_length(m)
    out = []
    for word, period in _fkm(m):
        canon = "".join(ALPHABET[x] for x in word)
        out.append(_class_from_canonical(canon, m // period))
    return tuple(out)


def prime_orbits(m: int) -> tuple[OrbitClass, ...]:
    """Prime classes (Lyndon words) of length exactly `m`."""
    return tuple(c for c in necklaces(m) if c.nu == 1)


def necklace_count(m: int) -> int:
    """Burnside count of binary necklaces of length `m`."""
    from sympy import divisors, totient

    if m < 1:
        raise InvalidInputError("m must be positive")
    return sum(int(totient(d)) * 2 ** (m // d) for d in divisors(m)) // m


def prime_orbit_count(m: int) -> int:
    """Number of prime orbits of code length `m` (Möbius inversion)."""
    from sympy import divisors
    from sympy.functions.combinatorial.numbers import mobius

    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidInputError("m must be a positive integer")
    return sum(int(mobius(d)) * 2 ** (m // d) for d in divisors(m)) // m


def itinerary_probability(start: str, path, r2: float) -> float:
    """Probability of an open itinerary of scattering outcomes.

    The particle starts swinging in section `start`; ``path[i]`` is the
    section it occupies after the i-th encounter with the step.  Staying on
    the same side is a reflection (probability r2), switching is a
    transmission (1 - r2).
    """
    path = _check_code(path)
    prev = _check_code(start)
    if len(prev) != 1:
        raise InvalidInputError("start must be a single letter")
    p = 1.0
    for side in path:
        p *= r2 if side == prev else 1.0 - r2
        prev = side
    return p


def composition_weights(m: int, r, t2=None) -> np.ndarray:
    """Summed amplitudes of all length-`m` words, grouped by number of L letters.

    Entry ``j`` is the sum of ``A_w`` over every word (not class) with ``j``
    left swings, computed as the trace of the m-th power of the one-swing
    transfer matrix with polynomial bookkeeping of the left-swing count.
    Independent of necklace enumeration; unbounded in `m`.
    """
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidInputError("m must be a positive integer")
    r = complex(r)
    t = complex(np.sqrt(1 - r * r if t2 is None else complex(t2)))
    # one swing in X then scattering into Y; the wall bounce supplies the minus sign
    step = {("L", "L"): -r, ("L", "R"): -t, ("R", "L"): -t, ("R", "R"): r}
    total = np.zeros(m + 1, dtype=complex)
    for start in ALPHABET:
        state = {"L": np.zeros(m + 2, dtype=complex), "R": np.zeros(m + 2, dtype=complex)}
        state[start][0] = 1.0
        for _ in range(m):
            nxt = {"L": np.zeros(m + 2, dtype=complex), "R": np.zeros(m + 2, dtype=complex)}
            for x in ALPHABET:
                poly = np.roll(state[x], 1) if x == "L" else state[x]
                for y in ALPHABET:
                    nxt[y] += step[(x, y)] * poly
            state = nxt
        total += state[start][: m + 1]
    return total


def class_counts(m_max: int) -> list[dict]:
    """Per-length counts of classes and prime classes, with the closed forms."""
    rows = []
    for m in range(1, _check_length(m_max) + 1):
        cls = necklaces(m)
        rows.append(
            {
                "m": m,
                "classes": len(cls),
                "prime": sum(1 for c in cls if c.nu == 1),
                "burnside": necklace_count(m),
                "mobius": prime_orbit_count(m),
                "proliferation_exponent": math.log(prime_orbit_count(m) * m) / m,
            }
        )
    return rows
