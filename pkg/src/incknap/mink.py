"""Disjunctive relaxations of minimum knapsack with geometrically growing cost buckets.

Items are sorted by nonincreasing cost.  For a pivot ``j`` (the costliest
item taken) the remaining items are grouped by cost level relative to
``c_j``; a vector ``tau`` fixes where each bucket starts and bucket ``k``
spans ``k`` consecutive levels.  ``rho`` guesses how many items each bucket
contributes (exactly, or at least ``ceil(1/eps)``).

Indices: ``tau`` is a plain tuple, buckets are numbered from 1 in docs and
from 0 in code, and item 0 of a piece is its pivot.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .lp import EQ, GE, LinearProgram, solve_lp
from .model import MinkInstance, normalize_mink
from .oracle import exact_mink
from .preprocess import _check_eps, c_eps, power

ZERO = Fraction(0)

__all__ = [
    "VertexStructureError", "cost_level", "in_gamma", "enumerate_gamma", "BucketFamily",
    "buckets_tau", "baseline_buckets", "MinkPiece", "build_mink_piece", "round_vertex",
    "cover", "GapReport", "disjunction_gap", "count_pieces", "c_eps",
]


class VertexStructureError(AssertionError):
    """A piece vertex whose fractional entries cannot occur at an extreme point."""


def cost_level(c: Fraction, eps, limit: int) -> Optional[int]:
    """The e with (1+eps)^-e >= c > (1+eps)^-(e+1), or None when c <= (1+eps)^-limit."""
    if c <= 0:
        return None
    if c > 1:
        raise ValueError("relative cost above 1")
    base = 1 + Fraction(eps)
    inv = 1 / c
    e = 0
    while e < limit and power(base, e + 1) <= inv:
        e += 1
    return None if e >= limit else e


def in_gamma(tau: Sequence[int], C: int) -> bool:
    if len(tau) ** 2 > 4 * C:
        return False
    if any(v < 0 for v in tau):
        return False
    if any(tau[k] + k + 1 > tau[k + 1] for k in range(len(tau) - 1)):
        return False
    return not tau or tau[-1] <= C - 1


def _window(tau_k: int, k: int, C: int) -> range:
    """Levels of bucket k (1-based) starting at tau_k."""
    return range(tau_k, min(tau_k + k, C))


def enumerate_gamma(eps, levels: Optional[Sequence[Optional[int]]] = None) -> Iterator[tuple]:
    """All of Gamma in lexicographic order (empty vector first).

    With ``levels`` (cost level per non-pivot item, None for the tail), only
    vectors whose buckets are all non-empty are produced.
    """
    C = c_eps(eps)
    present = None if levels is None else {v for v in levels if v is not None}

    def rec(prefix):
        yield prefix
        k = len(prefix) + 1
        if k * k > 4 * C:
            return
        lo = prefix[-1] + len(prefix) if prefix else 0
        for v in range(lo, C):
            if present is not None and not any(l in present for l in _window(v, k, C)):
                continue
            yield from rec(prefix + (v,))

    yield from rec(())


@dataclass(frozen=True)
class BucketFamily:
    """Buckets over local item indices (0 is the pivot and never bucketed)."""

    tau: Optional[tuple]          # None for the per-level baseline family
    buckets: tuple
    infinity: tuple
    widths: tuple                 # d_k

    def cost_range(self, costs, k):
        items = self.buckets[k]
        if not items:
            return None, None
        vals = [costs[i] for i in items]
        return min(vals), max(vals)

    def is_ordered(self, costs, eps) -> bool:
        """Bucket costs descend and the tail sits below min(last bucket, eps)."""
        ranges = [self.cost_range(costs, k) for k in range(len(self.buckets))]
        for (lo1, _), (_, hi2) in zip(ranges, ranges[1:]):
            if lo1 is not None and hi2 is not None and lo1 < hi2:
                return False
        if self.infinity:
            top = max(costs[i] for i in self.infinity)
            bound = Fraction(eps)
            if ranges and ranges[-1][0] is not None:
                bound = min(bound, ranges[-1][0])
            if top > bound:
                return False
        return True

    def key(self):
        return (self.buckets, self.infinity)


def _levels(costs, eps, C):
    return [None] + [cost_level(c, eps, C) for c in costs[1:]]


def buckets_tau(costs: Sequence[Fraction], tau: Sequence[int], eps) -> BucketFamily:
    """Buckets for ``tau`` over costs with ``costs[0] = 1`` (the pivot) and the rest <= 1."""
    eps = _check_eps(Fraction(eps))
    C = c_eps(eps)
    tau = tuple(tau)
    if not in_gamma(tau, C):
        raise ValueError(f"{tau} is not in Gamma for eps={eps}")
    lv = _levels(costs, eps, C)
    buckets, widths = [], []
    for k, t in enumerate(tau, start=1):
        win = _window(t, k, C)
        buckets.append(tuple(i for i in range(1, len(costs)) if lv[i] is not None and lv[i] in win))
        widths.append(len(win))
    tail_cap = 1 / power(1 + eps, C)
    last_min = min((costs[i] for i in buckets[-1]), default=None) if buckets else None
    inf = tuple(i for i in range(1, len(costs))
                if costs[i] <= tail_cap and (last_min is None or costs[i] < last_min))
    return BucketFamily(tau, tuple(buckets), inf, tuple(widths))


def baseline_buckets(costs: Sequence[Fraction], eps) -> BucketFamily:
    """One bucket per cost level 0..C-1 plus the tail."""
    eps = _check_eps(Fraction(eps))
    C = c_eps(eps)
    lv = _levels(costs, eps, C)
    buckets = tuple(tuple(i for i in range(1, len(costs)) if lv[i] == e) for e in range(C))
    inf = tuple(i for i in range(1, len(costs)) if lv[i] is None)
    return BucketFamily(None, buckets, inf, (1,) * C)


@dataclass
class MinkPiece:
    pivot: int                    # index in the cost-sorted instance
    items: tuple                  # sorted-instance index of each local item
    costs: tuple                  # local costs divided by the pivot's cost
    weights: tuple
    demand: Fraction
    family: BucketFamily
    rho: tuple
    lp: LinearProgram
    scale: Fraction               # local cost * scale = cost in sorted-instance units
    eps: Fraction = field(default=None)

    def bucket_of(self, i) -> Optional[int]:
        for k, b in enumerate(self.family.buckets):
            if i in b:
                return k
        return None

    def contains(self, x) -> bool:
        return self.lp.feasible([Fraction(v) for v in x])

    def cost(self, x) -> Fraction:
        return self.scale * sum((c * v for c, v in zip(self.costs, x)), ZERO)


def _shift(inst: MinkInstance, j: int):
    cj = inst.costs[j]
    scale = cj if cj > 0 else Fraction(1)
    costs = tuple(c / scale for c in inst.costs[j:])
    return tuple(range(j, inst.n)), costs, tuple(inst.weights[j:]), scale


def build_mink_piece(inst: MinkInstance, j: int, tau: Optional[Sequence[int]], rho: Sequence[int],
                     eps, family: Optional[BucketFamily] = None) -> Optional[MinkPiece]:
    """Piece for pivot ``j`` of a cost-sorted instance; None when a bucket is too small.

    ``tau=None`` selects the per-level baseline family, where ``rho`` may be 0.
    """
    eps = _check_eps(Fraction(eps))
    if any(a < b for a, b in zip(inst.costs, inst.costs[1:])):
        raise ValueError("costs must be sorted nonincreasing")
    items, costs, weights, scale = _shift(inst, j)
    if family is None:
        family = baseline_buckets(costs, eps) if tau is None else buckets_tau(costs, tau, eps)
    rho = tuple(int(r) for r in rho)
    R = math.ceil(1 / eps)
    if len(rho) != len(family.buckets):
        raise ValueError("rho needs one entry per bucket")
    low = 0 if family.tau is None else 1
    if any(not low <= r <= R for r in rho):
        raise ValueError(f"rho entries must lie in {low}..{R}")
    if any(len(b) < r for b, r in zip(family.buckets, rho)):
        return None
    m = len(items)
    free = set(family.infinity).union(*family.buckets) if family.buckets else set(family.infinity)
    lower = [ZERO] * m
    upper = [Fraction(1) if i in free else ZERO for i in range(m)]
    lower[0] = upper[0] = Fraction(1)
    lp = LinearProgram(m, list(costs), "min", lower=lower, upper=upper)
    lp.add(list(weights), GE, inst.demand)
    for b, r in zip(family.buckets, rho):
        if not b:
            continue
        lp.add({i: 1 for i in b}, GE if r == R else EQ, r)
    return MinkPiece(j, items, costs, weights, inst.demand, family, rho, lp, scale, eps)


def round_vertex(piece: MinkPiece, x: Sequence[Fraction]) -> list:
    """Integral point of the piece's cover constraint built from a vertex ``x``."""
    x = [Fraction(v) for v in x]
    frac = [i for i, v in enumerate(x) if v.denominator != 1]
    out = [int(v) for v in x]
    if len(frac) == 1:
        out[frac[0]] = 1
    elif len(frac) == 2:
        r, q = frac
        k = piece.bucket_of(r)
        if k is None or piece.bucket_of(q) != k or x[r] + x[q] != 1:
            raise VertexStructureError(f"fractional pair {r}, {q} breaks the vertex structure")
        if piece.weights[q] > piece.weights[r]:
            r, q = q, r
        out[r], out[q] = 1, 0
    elif frac:
        raise VertexStructureError(f"{len(frac)} fractional entries at a vertex")
    load = sum((w for w, v in zip(piece.weights, out) if v), ZERO)
    if load < piece.demand:
        raise VertexStructureError("rounded point misses the demand")
    return out


def cover(inst: MinkInstance, xhat: Sequence[int], eps) -> tuple:
    """``(tau, rho)`` of a piece containing ``xhat``; item 0 must be taken and be costliest."""
    eps = _check_eps(Fraction(eps))
    if not inst.feasible(xhat):
        raise ValueError("solution is infeasible")
    if xhat[0] != 1:
        raise ValueError("the first item must be taken")
    if any(inst.costs[i] > inst.costs[0] for i in range(inst.n)):
        raise ValueError("the first item must have the largest cost")
    C = c_eps(eps)
    R = math.ceil(1 / eps)
    scale = inst.costs[0] if inst.costs[0] > 0 else Fraction(1)
    costs = [c / scale for c in inst.costs]
    lv = _levels(costs, eps, C)
    taken = sorted({lv[i] for i in range(1, inst.n) if xhat[i] and lv[i] is not None})
    tau = []
    for level in taken:
        if not tau or level >= tau[-1] + len(tau):
            tau.append(level)
    tau = tuple(tau)
    fam = buckets_tau(costs, tau, eps)
    rho = tuple(min(sum(1 for i in b if xhat[i]), R) for b in fam.buckets)
    return tau, rho


@dataclass
class GapReport:
    lp_disj: Optional[Fraction]
    opt: Optional[Fraction]
    best_rounded: Optional[Fraction]
    best_solution: Optional[list]
    guarantee: str = "full"
    stats: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.opt is not None

    @staticmethod
    def _ratio(a, b):
        if a is None or b is None:
            return None
        if b == 0:
            return Fraction(1) if a == 0 else None
        return a / b

    @property
    def gap(self) -> Optional[Fraction]:
        """OPT over the disjunctive LP value."""
        return self._ratio(self.opt, self.lp_disj)

    @property
    def rounding_ratio(self) -> Optional[Fraction]:
        return self._ratio(self.best_rounded, self.lp_disj)


def _families(costs, eps, mode):
    C = c_eps(eps)
    if mode == "baseline":
        yield baseline_buckets(costs, eps)
        return
    lv = _levels(costs, eps, C)
    for tau in enumerate_gamma(eps, lv[1:]):
        yield buckets_tau(costs, tau, eps)


def _rhos(fam, R, mode):
    low = 0 if mode == "baseline" else 1
    ranges = []
    for b in fam.buckets:
        top = min(len(b), R)
        if mode == "baseline" and not b:
            ranges.append(range(0, 1))
        else:
            ranges.append(range(low, top + 1))
    return itertools.product(*ranges)


def disjunction_gap(inst: MinkInstance, eps, budget: Optional[int] = None, mode: str = "gamma",
                    opt: Optional[Fraction] = None,
                    observer: Optional[Callable] = None) -> GapReport:
    """Solve every non-empty piece and compare with the integer optimum.

    ``mode`` is "gamma" (growing buckets) or "baseline" (one bucket per
    level).  Identical piece LPs reached from different ``tau`` are solved
    once.  ``budget`` caps LP solves.
    """
    eps = _check_eps(Fraction(eps))
    if mode not in ("gamma", "baseline"):
        raise ValueError(f"unknown mode {mode!r}")
    R = math.ceil(1 / eps)
    if opt is None:
        opt = exact_mink(inst).value
    norm = normalize_mink(inst)
    sorted_inst = norm.instance
    stats = dict(pivots=0, families=0, pieces=0, duplicates=0, lp_solves=0, lp_pivots=0,
                 infeasible=0, two_fractional=0, one_fractional=0)
    best_lp = best_round = best_x = None
    guarantee = "full"
    seen = set()
    for j in range(sorted_inst.n):
        stats["pivots"] += 1
        _, costs, _, _ = _shift(sorted_inst, j)
        for fam in _families(costs, eps, mode):
            stats["families"] += 1
            for rho in _rhos(fam, R, mode):
                stats["pieces"] += 1
                key = (j, fam.key(), tuple(r if r < R else ("ge", R) for r in rho))
                if key in seen:
                    stats["duplicates"] += 1
                    continue
                seen.add(key)
                piece = build_mink_piece(sorted_inst, j, fam.tau, rho, eps, fam)
                if piece is None:
                    continue
                if budget is not None and stats["lp_solves"] >= budget:
                    guarantee = "budget"
                    break
                res = solve_lp(piece.lp)
                stats["lp_solves"] += 1
                stats["lp_pivots"] += res.pivots
                if not res.optimal:
                    stats["infeasible"] += 1
                    continue
                xbar = round_vertex(piece, res.x)
                nfrac = sum(1 for v in res.x if v.denominator != 1)
                if nfrac == 2:
                    stats["two_fractional"] += 1
                elif nfrac == 1:
                    stats["one_fractional"] += 1
                lp_val = norm.scale * piece.scale * res.value
                rounded = norm.scale * piece.cost(xbar)
                if best_lp is None or lp_val < best_lp:
                    best_lp = lp_val
                if best_round is None or rounded < best_round:
                    full = [0] * sorted_inst.n
                    for local, v in enumerate(xbar):
                        full[piece.items[local]] = v
                    best_round, best_x = rounded, norm.to_original(full)
                if observer is not None:
                    observer(dict(piece=piece, x=res.x, rounded=xbar, lp_value=lp_val,
                                  rounded_cost=rounded))
            if guarantee == "budget":
                break
        if guarantee == "budget":
            break
    return GapReport(best_lp, opt, best_round, best_x, guarantee, stats)


def count_pieces(eps, mode: str = "gamma") -> int:
    """Pieces per pivot: (R+1)^C for the baseline, sum of R^|tau| over Gamma otherwise."""
    eps = _check_eps(Fraction(eps))
    C = c_eps(eps)
    R = math.ceil(1 / eps)
    if mode == "baseline":
        return (R + 1) ** C
    if mode != "gamma":
        raise ValueError(f"unknown mode {mode!r}")
    # ways[v] = number of vectors of the current length ending in v
    ways = [1] * C
    total = 1
    length = 1
    while length * length <= 4 * C:
        total += R ** length * sum(ways)
        nxt = [0] * C
        acc = 0
        # next entry v needs v >= last + length
        for v in range(C):
            src = v - length
            if src >= 0:
                acc += ways[src]
            nxt[v] = acc
        ways = nxt
        length += 1
    return total
