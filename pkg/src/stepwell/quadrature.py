"""Globally adaptive composite Gauss-Legendre quadrature.

Panels use a fixed 15-point rule.  The error of a panel is estimated by
comparing the rule on the whole panel with the rule on its two halves; the
panel with the largest estimate is bisected until the summed estimate meets
the absolute tolerance.  Breakpoints are honoured exactly, so no panel ever
straddles one.
"""

from __future__ import annotations

import heapq
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)


class QuadResult(NamedTuple):
    value: complex | float
    error: float
    panels: int


def _rule(f, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES
    return half * np.dot(_WEIGHTS, f(x))


def integrate(f, a, b, tol=1e-10, breakpoints=(), max_panels=20000) -> QuadResult:
    """Integrate the vectorised function `f` over [a, b].

    `f` receives a 1-d float array and may return real or complex values.
    Raises ConvergenceError when `max_panels` is exhausted.
    """
    a, b = float(a), float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    cuts = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})

    heap = []
    counter = 0

    def push(lo, hi, whole):
        nonlocal counter
        mid = 0.5 * (lo + hi)
        left, right = _rule(f, lo, mid), _rule(f, mid, hi)
        err = abs(whole - (left + right))
        heapq.heappush(heap, (-err, counter, lo, hi, left, right))
        counter += 1
        return err

    total_err = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        total_err += push(lo, hi, _rule(f, lo, hi))

    while total_err > tol:
        if len(heap) >= max_panels:
            break
        neg_err, _, lo, hi, left, right = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or mid - lo <= 4 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0):
            # resolution floor: keep the panel, stop refining it
            heapq.heappush(heap, (neg_err, _, lo, hi, left, right))
            break
        total_err += neg_err
        total_err += push(lo, mid, left)
        total_err += push(mid, hi, right)

    panels = sorted(heap, key=lambda item: item[2])
    value = sum(item[4] + item[5] for item in panels)
    total_err = sum(-item[0] for item in panels)
    if total_err > tol:
        raise ConvergenceError("adaptive quadrature did not converge", value, total_err)
    if isinstance(value, np.generic):
        value = value.item()
    return QuadResult(value, total_err, len(heap))
