"""Instances and solutions for incremental knapsack and minimum knapsack.

All numbers are :class:`fractions.Fraction`; nothing in here touches floats.
Item multiplicities use ``None`` for "unbounded".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are rejected because they are already rounded."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing binary float {value!r}; pass a string or Fraction")
    return Fraction(value)


class InstanceError(ValueError):
    """Raised when instance data violates a model invariant."""


@dataclass(frozen=True)
class IikInstance:
    """An incremental knapsack instance.

    ``discounts`` multiply the per-period profit (all ones for plain IIK);
    ``multiplicities`` bound how many copies of each item may be taken
    (all ones for the 0/1 problem, ``None`` entries mean unbounded).
    """

    profits: tuple
    weights: tuple
    capacities: tuple
    discounts: tuple = ()
    multiplicities: tuple = ()

    def __post_init__(self):
        p = tuple(as_fraction(v) for v in self.profits)
        w = tuple(as_fraction(v) for v in self.weights)
        b = tuple(as_fraction(v) for v in self.capacities)
        d = tuple(int(v) for v in self.discounts) if self.discounts else (1,) * len(b)
        m = (tuple(None if v is None else int(v) for v in self.multiplicities)
             if self.multiplicities else (1,) * len(p))
        object.__setattr__(self, "profits", p)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "capacities", b)
        object.__setattr__(self, "discounts", d)
        object.__setattr__(self, "multiplicities", m)
        if len(p) != len(w):
            raise InstanceError("profits and weights must have the same length")
        if len(m) != len(p):
            raise InstanceError("multiplicities must have one entry per item")
        if len(d) != len(b):
            raise InstanceError("discounts must have one entry per time")
        if not b:
            raise InstanceError("at least one time period is required")
        if any(v <= 0 for v in p):
            raise InstanceError("profits must be positive")
        if any(v <= 0 for v in w):
            raise InstanceError("weights must be positive")
        if any(v < 0 for v in b):
            raise InstanceError("capacities must be nonnegative")
        if any(b[t] > b[t + 1] for t in range(len(b) - 1)):
            raise InstanceError("capacities must be nondecreasing")
        if any(v <= 0 for v in d):
            raise InstanceError("discounts must be positive integers")
        if any(v is not None and v <= 0 for v in m):
            raise InstanceError("multiplicities must be positive integers or unbounded")

    @property
    def n(self) -> int:
        return len(self.profits)

    @property
    def T(self) -> int:
        return len(self.capacities)

    @property
    def unit_discounts(self) -> bool:
        return all(v == 1 for v in self.discounts)

    @property
    def binary(self) -> bool:
        return all(v == 1 for v in self.multiplicities)

    def validate_strict(self) -> None:
        """User-facing check: the problem definition needs ``b_1 > 0``."""
        if self.capacities[0] <= 0:
            raise InstanceError("capacities must be positive")

    def replace(self, **changes) -> "IikInstance":
        fields = dict(profits=self.profits, weights=self.weights,
                      capacities=self.capacities, discounts=self.discounts,
                      multiplicities=self.multiplicities)
        fields.update(changes)
        return IikInstance(**fields)


@dataclass(frozen=True)
class NormalizedIik:
    """Items sorted by nonincreasing profit, oversized items removed.

    ``order[k]`` is the caller's index of the k-th normalized item.
    """

    instance: IikInstance
    order: tuple
    original: IikInstance


def normalize_iik(inst: IikInstance, drop_oversized: bool = True) -> NormalizedIik:
    """Stable sort by profit (ties by caller index) and drop items with w > b_T."""
    bT = inst.capacities[-1]
    keep = [i for i in range(inst.n) if not (drop_oversized and inst.weights[i] > bT)]
    keep.sort(key=lambda i: -inst.profits[i])
    sorted_inst = inst.replace(
        profits=[inst.profits[i] for i in keep],
        weights=[inst.weights[i] for i in keep],
        multiplicities=[inst.multiplicities[i] for i in keep] if keep else (),
    ) if keep else None
    return NormalizedIik(sorted_inst, tuple(keep), inst)


def denormalize_weights(norm: NormalizedIik):
    """Return (profits, weights) in the caller's order for the kept items."""
    p = [None] * norm.original.n
    w = [None] * norm.original.n
    for k, i in enumerate(norm.order):
        p[i] = norm.instance.profits[k]
        w[i] = norm.instance.weights[k]
    return p, w


@dataclass(frozen=True)
class Schedule:
    """Insertion time per item: ``insert_time[i]`` in 1..T, or ``None`` for never."""

    insert_time: tuple

    def __post_init__(self):
        object.__setattr__(self, "insert_time", tuple(self.insert_time))

    @classmethod
    def empty(cls, n: int) -> "Schedule":
        return cls((None,) * n)

    def matrix(self, T: int) -> list:
        """0/1 matrix ``x[t][i]`` with rows for t = 1..T (list index t-1)."""
        return [[1 if s is not None and s <= t else 0 for s in self.insert_time]
                for t in range(1, T + 1)]

    @classmethod
    def from_matrix(cls, x: Sequence[Sequence[int]]) -> "Schedule":
        n = len(x[0]) if x else 0
        times = []
        for i in range(n):
            col = [x[t][i] for t in range(len(x))]
            if any(col[t] > col[t + 1] for t in range(len(col) - 1)):
                raise ValueError(f"item {i} is removed after insertion")
            times.append(next((t + 1 for t, v in enumerate(col) if v), None))
        return cls(tuple(times))

    def counts(self, T: int) -> "MultiSchedule":
        return MultiSchedule(tuple(tuple(row) for row in self.matrix(T)))


@dataclass(frozen=True)
class MultiSchedule:
    """Copies of each item held at each time: ``count[t][i]``, nondecreasing in t."""

    count: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.count)
        object.__setattr__(self, "count", rows)
        for t in range(len(rows) - 1):
            if any(a > b for a, b in zip(rows[t], rows[t + 1])):
                raise ValueError("counts must be nondecreasing in time")
        if any(v < 0 for row in rows for v in row):
            raise ValueError("counts must be nonnegative")

    @classmethod
    def empty(cls, n: int, T: int) -> "MultiSchedule":
        return cls(tuple((0,) * n for _ in range(T)))


@dataclass
class FeasibilityReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _rows(inst: IikInstance, s) -> list:
    if isinstance(s, Schedule):
        if len(s.insert_time) != inst.n:
            raise ValueError("schedule has wrong number of items")
        for v in s.insert_time:
            if v is not None and not 1 <= v <= inst.T:
                raise ValueError(f"insertion time {v} outside 1..{inst.T}")
        return s.matrix(inst.T)
    if isinstance(s, MultiSchedule):
        if len(s.count) != inst.T or any(len(r) != inst.n for r in s.count):
            raise ValueError("schedule dimensions do not match the instance")
        return [list(r) for r in s.count]
    raise TypeError(f"not a schedule: {type(s).__name__}")


def evaluate_profit(inst: IikInstance, s) -> Fraction:
    """Discounted profit: sum over t of discount_t * p^T x_t."""
    x = _rows(inst, s)
    total = Fraction(0)
    for t in range(inst.T):
        total += inst.discounts[t] * sum((inst.profits[i] * x[t][i]
                                          for i in range(inst.n) if x[t][i]), Fraction(0))
    return total


def profit_by_insertion(inst: IikInstance, s: Schedule) -> Fraction:
    """Closed form for unit discounts: sum of p_i (T - t_i + 1) over inserted items."""
    return sum((inst.profits[i] * (inst.T - t + 1)
                for i, t in enumerate(s.insert_time) if t is not None), Fraction(0))


def check_feasible(inst: IikInstance, s) -> FeasibilityReport:
    """Capacity and multiplicity violations, as ``(kind, t or i, load, limit)`` tuples."""
    x = _rows(inst, s)
    report = FeasibilityReport()
    for t in range(inst.T):
        load = sum((inst.weights[i] * x[t][i] for i in range(inst.n) if x[t][i]), Fraction(0))
        if load > inst.capacities[t]:
            report.violations.append(("capacity", t + 1, load, inst.capacities[t]))
    if isinstance(s, MultiSchedule):
        for i, d in enumerate(inst.multiplicities):
            if d is not None and x[-1][i] > d:
                report.violations.append(("multiplicity", i, x[-1][i], d))
    return report


@dataclass(frozen=True)
class MinkInstance:
    """min c^T x  s.t.  w^T x >= demand,  x in {0,1}^n."""

    costs: tuple
    weights: tuple
    demand: Fraction

    def __post_init__(self):
        c = tuple(as_fraction(v) for v in self.costs)
        w = tuple(as_fraction(v) for v in self.weights)
        object.__setattr__(self, "costs", c)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "demand", as_fraction(self.demand))
        if len(c) != len(w):
            raise InstanceError("costs and weights must have the same length")
        if not c:
            raise InstanceError("at least one item is required")
        if any(v < 0 for v in c):
            raise InstanceError("costs must be nonnegative")
        if any(v <= 0 for v in w):
            raise InstanceError("weights must be positive")
        if self.demand <= 0:
            raise InstanceError("demand must be positive")

    @property
    def n(self) -> int:
        return len(self.costs)

    def cost(self, x: Sequence) -> Fraction:
        return sum((c * v for c, v in zip(self.costs, x) if v), Fraction(0))

    def load(self, x: Sequence) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, x) if v), Fraction(0))

    def feasible(self, x: Sequence) -> bool:
        return all(v in (0, 1) for v in x) and self.load(x) >= self.demand


@dataclass(frozen=True)
class NormalizedMink:
    """Costs sorted nonincreasing and divided by the largest cost (so c_1 = 1).

    ``order[k]`` is the caller's index of item k; ``scale`` is the divisor.
    """

    instance: MinkInstance
    order: tuple
    scale: Fraction

    def to_original(self, x: Sequence) -> list:
        out = [0] * len(self.order)
        for k, i in enumerate(self.order):
            out[i] = x[k]
        return out


def normalize_mink(inst: MinkInstance) -> NormalizedMink:
    order = sorted(range(inst.n), key=lambda i: -inst.costs[i])
    top = inst.costs[order[0]]
    scale = top if top > 0 else Fraction(1)
    norm = MinkInstance([inst.costs[i] / scale for i in order],
                        [inst.weights[i] for i in order], inst.demand)
    return NormalizedMink(norm, tuple(order), scale)


def fraction_str(v: Optional[Fraction]) -> str:
    if v is None:
        return ""
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
