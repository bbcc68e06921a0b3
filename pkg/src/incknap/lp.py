"""Exact-rational linear programming returning basic optimal solutions.

A dense bounded-variable primal simplex on sparse rows, two phases, Bland's
rule throughout.  Fixed variables are substituted before pivoting.  Bounds
use ``None`` for infinity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

LE, GE, EQ = "<=", ">=", "=="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[int, Fraction]
    sense: str
    rhs: Fraction

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * x[j] for j, a in self.coeffs.items()), ZERO)

    def satisfied(self, x: Sequence[Fraction]) -> bool:
        v = self.activity(x)
        if self.sense == LE:
            return v <= self.rhs
        if self.sense == GE:
            return v >= self.rhs
        return v == self.rhs


@dataclass
class LinearProgram:
    """``sense`` is ``"min"`` or ``"max"``; bounds default to ``[0, +inf)``."""

    num_vars: int
    objective: list
    sense: str = "max"
    constraints: list = field(default_factory=list)
    lower: list = None
    upper: list = None

    def __post_init__(self):
        if self.lower is None:
            self.lower = [ZERO] * self.num_vars
        if self.upper is None:
            self.upper = [None] * self.num_vars
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length must equal the variable count")
        if len(self.lower) != self.num_vars or len(self.upper) != self.num_vars:
            raise ValueError("bounds must have one entry per variable")
        if self.sense not in ("min", "max"):
            raise ValueError(f"unknown sense {self.sense!r}")
        for lo, hi in zip(self.lower, self.upper):
            if lo is not None and hi is not None and lo > hi:
                raise ValueError("lower bound exceeds upper bound")

    def add(self, coeffs, sense: str, rhs) -> None:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {sense!r}")
        if not isinstance(coeffs, Mapping):
            if len(coeffs) != self.num_vars:
                raise ValueError("row length must equal the variable count")
            coeffs = {j: a for j, a in enumerate(coeffs) if a}
        row = {j: Fraction(a) for j, a in coeffs.items() if a}
        if any(not 0 <= j < self.num_vars for j in row):
            raise ValueError("row references an unknown variable")
        self.constraints.append(Constraint(row, sense, Fraction(rhs)))

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), ZERO)

    def feasible(self, x: Sequence[Fraction]) -> bool:
        for v, lo, hi in zip(x, self.lower, self.upper):
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                return False
        return all(c.satisfied(x) for c in self.constraints)


@dataclass
class LPResult:
    status: Status
    x: Optional[list] = None
    value: Optional[Fraction] = None
    basis: tuple = ()
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    """Rows ``x_B[r] + sum_j T[r][j] x_j = ...`` kept as dicts, values kept explicitly."""

    def __init__(self, rows, upper, values, basis):
        self.rows = rows          # list of dict col -> Fraction (basic col included, coeff 1)
        self.upper = upper        # per column, None for +inf
        self.val = values         # current value of every column
        self.basis = basis        # basic column per row
        self.pivots = 0

    def reduced_costs(self, cost):
        d = {j: c for j, c in cost.items() if c}
        for r, b in enumerate(self.basis):
            cb = cost.get(b, ZERO)
            if not cb:
                continue
            for j, a in self.rows[r].items():
                d[j] = d.get(j, ZERO) - cb * a
        return d

    def pivot(self, r, j):
        row = self.rows[r]
        a = row[j]
        if a != ONE:
            inv = ONE / a
            row = {k: v * inv for k, v in row.items()}
            self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(j)
            if not f:
                continue
            for k, v in row.items():
                nv = other.get(k, ZERO) - f * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
        self.basis[r] = j
        self.pivots += 1

    def run(self, cost, frozen):
        """Minimise ``cost`` (dict col -> coeff). Returns False if unbounded."""
        while True:
            d = self.reduced_costs(cost)
            basic = set(self.basis)
            enter = None
            for j in sorted(d):
                if j in basic or j in frozen:
                    continue
                dj = d[j]
                u = self.upper[j]
                if u is not None and u == 0:
                    continue
                at_lower = self.val[j] == 0
                if (at_lower and dj < 0) or (not at_lower and dj > 0):
                    enter = j
                    break
            if enter is None:
                return True
            s = ONE if self.val[enter] == 0 else -ONE
            theta = self.upper[enter]
            leave_row, leave_col = None, enter
            for r, b in enumerate(self.basis):
                a = self.rows[r].get(enter)
                if not a:
                    continue
                g = a * s
                if g > 0:
                    lim = self.val[b] / g
                else:
                    ub = self.upper[b]
                    if ub is None:
                        continue
                    lim = (ub - self.val[b]) / (-g)
                if theta is None or lim < theta or (lim == theta and b < leave_col):
                    theta, leave_row, leave_col = lim, r, b
            if theta is None:
                return False
            if theta:
                step = s * theta
                self.val[enter] += step
                for r, b in enumerate(self.basis):
                    a = self.rows[r].get(enter)
                    if a:
                        self.val[b] -= a * step
            if leave_row is None:
                # bound flip of the entering column
                self.val[enter] = ZERO if s < 0 else self.upper[enter]
                continue
            b = self.basis[leave_row]
            # snap the leaving column exactly onto the bound it reached
            a = self.rows[leave_row][enter] * s
            self.val[b] = ZERO if a > 0 else self.upper[b]
            self.pivot(leave_row, enter)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exactly solve ``lp``; on success the point is a basic (vertex) solution."""
    n = lp.num_vars
    sign = ONE if lp.sense == "min" else -ONE
    fixed = {}
    for j in range(n):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None and hi is not None and lo == hi:
            fixed[j] = lo

    # column transforms: x_j = offset + direction * y_col   (or y+ - y- for free vars)
    cols = []               # (var, direction)
    upper = []
    offset = {}
    colmap = {}
    for j in range(n):
        if j in fixed:
            continue
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None:
            offset[j] = lo
            colmap[j] = [(len(cols), ONE)]
            cols.append((j, ONE))
            upper.append(None if hi is None else hi - lo)
        elif hi is not None:
            offset[j] = hi
            colmap[j] = [(len(cols), -ONE)]
            cols.append((j, -ONE))
            upper.append(None)
        else:
            offset[j] = ZERO
            colmap[j] = [(len(cols), ONE), (len(cols) + 1, -ONE)]
            cols.extend([(j, ONE), (j, -ONE)])
            upper.extend([None, None])
    nstruct = len(cols)

    rows, rhs, senses = [], [], []
    for con in lp.constraints:
        r = con.rhs
        row = {}
        for j, a in con.coeffs.items():
            if j in fixed:
                r -= a * fixed[j]
                continue
            r -= a * offset[j]
            for c, dirn in colmap[j]:
                row[c] = row.get(c, ZERO) + a * dirn
        row = {c: a for c, a in row.items() if a}
        if not row:
            ok = (r >= 0) if con.sense == LE else (r <= 0) if con.sense == GE else (r == 0)
            if not ok:
                return LPResult(Status.INFEASIBLE)
            continue
        rows.append(row)
        rhs.append(r)
        senses.append(con.sense)

    ncols = nstruct
    basis = []
    art = []
    for i, row in enumerate(rows):
        r, sense = rhs[i], senses[i]
        slack_coef = ONE if sense == LE else -ONE if sense == GE else None
        if r < 0:
            rows[i] = row = {c: -a for c, a in row.items()}
            rhs[i] = r = -r
            if slack_coef is not None:
                slack_coef = -slack_coef
        if slack_coef is not None:
            row[ncols] = slack_coef
            upper.append(None)
            ncols += 1
        if slack_coef == ONE:
            basis.append(ncols - 1)
        else:
            row[ncols] = ONE
            upper.append(None)
            art.append(ncols)
            basis.append(ncols)
            ncols += 1

    values = [ZERO] * ncols
    for i, b in enumerate(basis):
        values[b] = rhs[i]
    tab = _Tableau(rows, upper, values, basis)

    if art:
        tab.run({a: ONE for a in art}, frozen=())
        if any(tab.val[a] != 0 for a in art):
            return LPResult(Status.INFEASIBLE, pivots=tab.pivots)
        artset = set(art)
        for r in range(len(tab.basis)):
            if tab.basis[r] in artset:
                for c in sorted(tab.rows[r]):
                    if c not in artset and tab.rows[r][c]:
                        tab.pivot(r, c)
                        break
        for a in art:
            tab.upper[a] = ZERO
        frozen = artset
    else:
        frozen = ()

    cost = {}
    const = ZERO
    for j in range(n):
        c = lp.objective[j]
        if not c:
            continue
        c = c * sign
        if j in fixed:
            const += c * fixed[j]
            continue
        const += c * offset[j]
        for col, dirn in colmap[j]:
            cost[col] = cost.get(col, ZERO) + c * dirn
    if not tab.run(cost, frozen):
        return LPResult(Status.UNBOUNDED, pivots=tab.pivots)

    x = []
    for j in range(n):
        if j in fixed:
            x.append(fixed[j])
            continue
        v = offset[j]
        for col, dirn in colmap[j]:
            v += dirn * tab.val[col]
        x.append(v)
    basis_vars = tuple(sorted(cols[b][0] for b in tab.basis if b < nstruct))
    return LPResult(Status.OPTIMAL, x, lp.value(x), basis_vars, tab.pivots)


def tight_rows(lp: LinearProgram, x: Sequence[Fraction]) -> list:
    """Coefficient rows of every constraint and bound active at ``x``."""
    active = []
    for con in lp.constraints:
        if con.activity(x) == con.rhs:
            active.append(dict(con.coeffs))
    for j in range(lp.num_vars):
        if (lp.lower[j] is not None and x[j] == lp.lower[j]) or \
           (lp.upper[j] is not None and x[j] == lp.upper[j]):
            active.append({j: ONE})
    return active


def rank(rows: Sequence[Mapping[int, Fraction]]) -> int:
    """Rank of sparse rational rows by Gaussian elimination."""
    pivots = {}
    r = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            k = min(row)
            if k not in pivots:
                pivots[k] = row
                r += 1
                break
            p = pivots[k]
            f = row[k] / p[k]
            for kk, vv in p.items():
                nv = row.get(kk, ZERO) - f * vv
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
    return r


def is_vertex(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """True when the active constraints at ``x`` have full column rank."""
    return lp.feasible(x) and rank(tight_rows(lp, x)) == lp.num_vars
