"""Greedy rounding of a piece's LP optimum and the final floor step."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import MultiSchedule, Schedule
from .pieces import Piece

ZERO = Fraction(0)


@dataclass(frozen=True)
class RoundingTrace:
    """``xbar[t]`` for t = 1..T (row 0 is the all-zero start), plus the weight targets."""

    xbar: tuple
    targets: tuple        # W_t, index t - 1
    unit: bool

    @property
    def T(self) -> int:
        return len(self.xbar) - 1

    def fractional(self, t: int) -> set:
        """Items whose value at time t is not an integer."""
        return {i for i, v in enumerate(self.xbar[t]) if v.denominator != 1}


def ratio_order(profits: Sequence[Fraction], weights: Sequence[Fraction]) -> tuple:
    """Items by nonincreasing profit/weight, ties by index."""
    return tuple(sorted(range(len(profits)), key=lambda i: (-profits[i] / weights[i], i)))


def greedy_round_multi(piece: Piece, xstar: Sequence[Fraction], d=None,
                       order: Optional[Sequence[int]] = None) -> RoundingTrace:
    """Refill each time with the best-ratio free items until the LP weight is reached.

    ``d`` defaults to the frame's multiplicities; per-cell caps never exceed
    the piece's own upper bounds.
    """
    fr = piece.frame
    if not piece.lp.feasible(xstar):
        raise ValueError("point is infeasible for the piece LP")
    n, T, w = fr.n, fr.T, fr.weights
    if d is None:
        d = fr.mult
    if order is None:
        order = ratio_order(fr.profits, w)
    x = piece.expand(xstar)
    targets = tuple(sum((w[i] * x[t][i] for i in range(n)), ZERO) for t in range(1, T + 1))
    rows = [tuple([ZERO] * n)]
    cur = [ZERO] * n
    for t in range(1, T + 1):
        fixed = [piece.fixed(t, i) for i in range(n)]
        for i in range(n):
            if fixed[i]:
                cur[i] = piece.lo[t][i]
        gap = targets[t - 1] - sum((w[i] * cur[i] for i in range(n)), ZERO)
        pos = 0
        while gap > 0:
            while pos < n:
                i = order[pos]
                cap = piece.hi[t][i]
                if d[i] is not None and (cap is None or cap > d[i]):
                    cap = Fraction(d[i])
                if not fixed[i] and (cap is None or cur[i] < cap):
                    break
                pos += 1
            if pos == n:
                raise ValueError(f"cannot reach LP weight at time {t}")
            i = order[pos]
            cap = piece.hi[t][i]
            if d[i] is not None and (cap is None or cap > d[i]):
                cap = Fraction(d[i])
            step = gap / w[i]
            if cap is not None and cap - cur[i] < step:
                step = cap - cur[i]
            cur[i] += step
            gap -= w[i] * step
        rows.append(tuple(cur))
    unit = all(v == 1 for v in d)
    return RoundingTrace(tuple(rows), targets, unit)


def greedy_round(piece: Piece, xstar: Sequence[Fraction],
                 order: Optional[Sequence[int]] = None) -> RoundingTrace:
    """The 0/1 case: every cap is one."""
    return greedy_round_multi(piece, xstar, (1,) * piece.frame.n, order)


def floor_solution(trace: RoundingTrace):
    """Round every entry down; a :class:`Schedule` for 0/1 traces, else counts."""
    rows = tuple(tuple(math.floor(v) for v in trace.xbar[t]) for t in range(1, trace.T + 1))
    if trace.unit:
        return Schedule.from_matrix(rows)
    return MultiSchedule(rows)
