"""Reduce an IIK instance to 1-in, well-behaved instances and lift solutions back.

Profits are rounded down to powers of ``1/(1+eps)`` unless tiny (at most
``eps/T``), and capacities are flattened so they only change at the
significant times ``T + 1 - ceil((1+eps)^j)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .model import IikInstance, MultiSchedule, Schedule, check_feasible

SMALL = None  # profit-class marker for items with p <= eps/T


@lru_cache(maxsize=None)
def power(base: Fraction, j: int) -> Fraction:
    return base ** j


def ceil_log(base: Fraction, x: Fraction) -> int:
    """Smallest integer j >= 0 with base**j >= x (base > 1)."""
    j = 0
    while power(base, j) < x:
        j += 1
    return j


def floor_log(base: Fraction, x: Fraction) -> int:
    """Largest integer j >= 0 with base**j <= x (base > 1, x >= 1)."""
    if x < 1:
        raise ValueError("floor_log needs x >= 1")
    j = 0
    while power(base, j + 1) <= x:
        j += 1
    return j


def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    return eps


def c_eps(eps) -> int:
    """ceil(log_{1+eps}(1/eps)), the width of a profit (or cost) window."""
    eps = _check_eps(eps)
    return ceil_log(1 + eps, 1 / eps)


def num_profit_classes(T: int, eps) -> int:
    """K = ceil(log_{1+eps}(T/eps)); classes are 0..K plus the small class."""
    eps = _check_eps(eps)
    return ceil_log(1 + eps, Fraction(T) / eps)


def significant_times(T: int, eps) -> tuple:
    """Ascending times of the form T + 1 - ceil((1+eps)^j), j >= 0."""
    eps = _check_eps(eps)
    if T < 1:
        raise ValueError("T must be positive")
    base = 1 + eps
    out = set()
    j = 0
    while True:
        c = math.ceil(power(base, j))
        if c > T:
            break
        out.add(T + 1 - c)
        j += 1
    return tuple(sorted(out))


def profit_class(p, eps, T: int):
    """Return ``(j, p')`` with p' = (1+eps)^-j <= p < (1+eps)^(1-j), or ``(SMALL, p)``."""
    p = Fraction(p)
    eps = _check_eps(eps)
    if p <= 0 or p > 1:
        raise ValueError("profit must lie in (0, 1]")
    if p <= eps / T:
        return SMALL, p
    base = 1 + eps
    j = ceil_log(base, 1 / p)
    return j, 1 / power(base, j)


def flattened_capacities(b, eps) -> tuple:
    """Capacities held constant between significant times, zero before the first."""
    eps = _check_eps(eps)
    T = len(b)
    base = 1 + eps
    jmax = floor_log(base, Fraction(T))
    out = [Fraction(0)] * T
    for t in range(1, T + 1):
        v = T - t + 1
        if v == 1:
            out[t - 1] = b[T - 1]
            continue
        for j in range(1, jmax + 1):
            lo = math.ceil(power(base, j - 1))
            hi = math.ceil(power(base, j))
            if lo < v <= hi:
                out[t - 1] = b[T - hi]
                break
    return tuple(out)


@dataclass(frozen=True)
class RestrictMap:
    """Items ``start..n-1`` of ``source`` kept, profits divided by ``scale``."""

    source: IikInstance
    start: int
    scale: Fraction


@dataclass(frozen=True)
class WellBehavedMap:
    source: IikInstance
    eps: Fraction
    classes: tuple        # per item: class index or SMALL
    times: tuple          # significant times, ascending
    band: tuple           # band[t-1] = significant time whose capacity t uses, or None


def one_in_restrict(inst: IikInstance, i: int):
    """Keep items i.. (profit order, 0-based) and rescale so item i has profit 1."""
    if not 0 <= i < inst.n:
        raise IndexError(f"item {i} outside 0..{inst.n - 1}")
    scale = inst.profits[i]
    sub = inst.replace(profits=[p / scale for p in inst.profits[i:]],
                       weights=inst.weights[i:],
                       multiplicities=inst.multiplicities[i:])
    return sub, RestrictMap(inst, i, scale)


def well_behave(inst: IikInstance, eps):
    """Round profits to classes and flatten capacities; needs p_1 = 1 and sorted profits."""
    eps = _check_eps(eps)
    if inst.profits[0] != 1:
        raise ValueError("instance must be normalized so that p_1 = 1")
    T = inst.T
    classes, profits = [], []
    for p in inst.profits:
        k, q = profit_class(p, eps, T)
        classes.append(k)
        profits.append(q)
    times = significant_times(T, eps)
    band = []
    for t in range(1, T + 1):
        prior = [s for s in times if s <= t]
        band.append(prior[-1] if prior else None)
    new = inst.replace(profits=profits, capacities=flattened_capacities(inst.capacities, eps))
    return new, WellBehavedMap(inst, eps, tuple(classes), times, tuple(band))


def is_well_behaved(inst: IikInstance, eps) -> bool:
    """Check both well-behavedness conditions exactly."""
    eps = _check_eps(eps)
    T = inst.T
    base = 1 + eps
    K = num_profit_classes(T, eps)
    allowed = {1 / power(base, j) for j in range(K + 1)}
    if any(p not in allowed and p > eps / T for p in inst.profits):
        return False
    jmax = floor_log(base, Fraction(T))
    b = (Fraction(0),) + tuple(inst.capacities)
    for t in range(1, T + 1):
        v = T - t + 1
        for j in range(1, jmax + 1):
            if math.ceil(power(base, j - 1)) < v < math.ceil(power(base, j)):
                if b[t] != b[t - 1]:
                    return False
    return True


def lift_solution(m, s):
    """Map a schedule of a transformed instance back onto ``m.source``.

    For a well-behaved map this is the identity (capacities only shrank);
    for a restriction the dropped leading items are never inserted.
    """
    if isinstance(m, WellBehavedMap):
        transformed = m.source.replace(capacities=flattened_capacities(m.source.capacities, m.eps))
        if not check_feasible(transformed, s):
            raise ValueError("schedule is infeasible for the transformed instance")
        return s
    if isinstance(m, RestrictMap):
        if isinstance(s, MultiSchedule):
            rows = tuple((0,) * m.start + tuple(r) for r in s.count)
            return MultiSchedule(rows)
        return Schedule((None,) * m.start + tuple(s.insert_time))
    raise TypeError(f"unknown map {type(m).__name__}")
