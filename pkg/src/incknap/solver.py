"""End-to-end approximation for incremental knapsack and its generalisations.

:func:`solve_ptas` guesses the most profitable item of the solution, makes the
restricted instance well-behaved, walks every piece, solves its LP, rounds
greedily and keeps the best lifted schedule.  :func:`solve_multi` runs the
same pipeline with item multiplicities and :func:`solve_ik` handles
time-dependent discounts by expanding time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .lp import solve_lp
from .model import (IikInstance, InstanceError, MultiSchedule, Schedule, check_feasible,
                    evaluate_profit, normalize_iik)
from .pieces import (Frame, _Overdrawn, _propagate, _raw_bounds, _tie_bands, build_piece,
                     enumerate_rho, enumerate_stairways, infeasible_bounds, relaxation_bound,
                     stairway_blocks, stairway_relaxation)
from .preprocess import _check_eps, one_in_restrict, well_behave
from .rounding import floor_solution, greedy_round_multi, ratio_order

ZERO = Fraction(0)
DEFAULT_T_CAP = 10_000


@dataclass
class SolveReport:
    schedule: object
    profit: Fraction
    eps: Fraction
    eps_internal: Fraction
    guarantee: str = "full"           # "full" or "budget"
    stats: dict = field(default_factory=dict)
    chain: dict = field(default_factory=dict)

    def counts(self, T: int) -> tuple:
        s = self.schedule
        return s.count if isinstance(s, MultiSchedule) else s.counts(T).count

    def record(self, T: int) -> dict:
        """Everything except wall time, with the schedule as a count matrix."""
        stats = {k: v for k, v in self.stats.items() if k != "seconds"}
        return dict(counts=self.counts(T), profit=self.profit, eps=self.eps,
                    eps_internal=self.eps_internal, guarantee=self.guarantee,
                    stats=stats, chain=dict(self.chain))


class _Search:
    """Mutable state of one run: incumbent, counters, budget."""

    def __init__(self, original, norm, eps, budget, observer, multi, use_bound=True):
        self.original = original
        self.norm = norm
        self.eps = eps
        self.eps_int = eps / 4
        self.budget = budget
        self.observer = observer
        self.multi = multi
        self.use_bound = use_bound
        T, n = original.T, original.n
        self.best = MultiSchedule.empty(n, T) if multi else Schedule.empty(n)
        self.best_profit = ZERO
        self.out_of_budget = False
        self.stats = dict(guesses=0, stairways=0, pieces=0, empty=0, pruned=0,
                          lp_solves=0, lp_pivots=0, rounded=0, improvements=0)

    # lifting ------------------------------------------------------------
    def lift(self, start: int, sched):
        """Schedule over restricted items ``start..`` -> schedule over the caller's items."""
        T, n = self.original.T, self.original.n
        order = self.norm.order
        if self.multi:
            rows = [[0] * n for _ in range(T)]
            for t in range(T):
                for k, v in enumerate(sched.count[t]):
                    rows[t][order[start + k]] = v
            return MultiSchedule(rows)
        times = [None] * n
        for k, v in enumerate(sched.insert_time):
            times[order[start + k]] = v
        return Schedule(times)

    def offer(self, sched, info):
        profit = evaluate_profit(self.original, sched)
        if profit > self.best_profit:
            self.best, self.best_profit = sched, profit
            self.stats["improvements"] += 1
        if self.observer is not None:
            info["profit"] = profit
            self.observer(info)

    # one guess ----------------------------------------------------------
    def run_guess(self, g: int):
        inst = self.norm.instance
        sub, rmap = one_in_restrict(inst, g)
        wb, _ = well_behave(sub, self.eps_int)
        fr = Frame.build(wb, self.eps_int)
        order = ratio_order(fr.profits, fr.weights)
        # profit of anything derived from this guess is at most this factor times its wb value
        factor = rmap.scale * (1 + self.eps_int)
        allowed = {k for k in fr.members}
        J = len(fr.times)
        def prune_stairway(entries):
            lo, hi = stairway_relaxation(fr, entries)
            if infeasible_bounds(fr, lo, hi):
                self.stats["empty"] += 1
                return True
            if self.use_bound and factor * relaxation_bound(fr, lo, hi) <= self.best_profit:
                self.stats["pruned"] += 1
                return True
            return False

        for s in enumerate_stairways(J, fr.K, require_k1_zero=True, allowed_classes=allowed,
                                     prune=prune_stairway):
            self.stats["stairways"] += 1
            blocks = stairway_blocks(s, fr.times, fr.T, fr.K, fr.C)

            def prune(t, values, blocks=blocks):
                try:
                    lo, hi = _raw_bounds(fr, blocks, values, upto=t)
                except _Overdrawn:
                    return True
                _propagate(fr, lo, hi)
                _tie_bands(fr, lo, hi)
                if infeasible_bounds(fr, lo, hi, upto=t):
                    self.stats["empty"] += 1
                    return True
                if self.use_bound and factor * relaxation_bound(fr, lo, hi) <= self.best_profit:
                    self.stats["pruned"] += 1
                    return True
                return False

            for rho in enumerate_rho(s, self.eps_int, fr.times, fr.class_sizes,
                                     T=fr.T, K=fr.K, prune=prune, C=fr.C):
                self.stats["pieces"] += 1
                piece = build_piece(fr, s, rho)
                if piece is None:
                    self.stats["empty"] += 1
                    continue
                if self.budget is not None and self.stats["lp_solves"] >= self.budget:
                    self.out_of_budget = True
                    return
                res = solve_lp(piece.lp)
                self.stats["lp_solves"] += 1
                self.stats["lp_pivots"] += res.pivots
                if not res.optimal:
                    self.stats["empty"] += 1
                    continue
                value = piece.constant + res.value
                skip = self.use_bound and factor * value <= self.best_profit
                if skip:
                    self.stats["pruned"] += 1
                    if self.observer is None:
                        continue
                trace = greedy_round_multi(piece, res.x, None if self.multi else (1,) * fr.n, order)
                sched = floor_solution(trace)
                if self.multi and isinstance(sched, Schedule):
                    sched = sched.counts(fr.T)
                info = dict(guess=g, piece=piece, xstar=res.x, trace=trace, lp_value=value,
                            wb_instance=wb, wb_profit=evaluate_profit(wb, sched),
                            scale=rmap.scale, skipped=skip)
                if skip:
                    info["profit"] = None
                    self.observer(info)
                    continue
                self.stats["rounded"] += 1
                self.offer(self.lift(g, sched), info)


def _solve(inst: IikInstance, eps, budget, observer, multi: bool, use_bound: bool) -> SolveReport:
    eps = _check_eps(Fraction(eps))
    if not inst.unit_discounts:
        raise InstanceError("discounted instances go through solve_ik")
    if not multi and not inst.binary:
        raise InstanceError("instance has multiplicities; use solve_multi")
    if budget is not None and budget < 0:
        raise ValueError("budget must be nonnegative")
    started = time.perf_counter()
    norm = normalize_iik(inst)
    search = _Search(inst, norm, eps, budget, observer, multi, use_bound)
    if norm.instance is not None:
        for g in range(norm.instance.n):
            search.stats["guesses"] += 1
            search.run_guess(g)
            if search.out_of_budget:
                break
    search.stats["seconds"] = time.perf_counter() - started
    if not check_feasible(inst, search.best):
        raise AssertionError("solver produced an infeasible schedule")
    return SolveReport(search.best, search.best_profit, eps, search.eps_int,
                       "budget" if search.out_of_budget else "full", search.stats)


def solve_ptas(inst: IikInstance, eps, budget: Optional[int] = None,
               observer: Optional[Callable] = None, prune: bool = True) -> SolveReport:
    """(1 - eps)-approximate 0/1 incremental knapsack.

    ``budget`` caps the number of LP solves; ``observer`` receives a dict for
    every rounded piece.  ``prune=False`` turns off incumbent-based skipping
    (the answer is the same, only slower).
    """
    return _solve(inst, eps, budget, observer, multi=False, use_bound=prune)


def solve_multi(inst: IikInstance, eps, budget: Optional[int] = None,
                observer: Optional[Callable] = None, prune: bool = True) -> SolveReport:
    """Same as :func:`solve_ptas` but items may be taken up to ``d_i`` times."""
    return _solve(inst, eps, budget, observer, multi=True, use_bound=prune)


# discounts --------------------------------------------------------------

@dataclass(frozen=True)
class TimeMap:
    """Expanded time ``delta[t-1] + 1 .. delta[t-1] + copies[t-1]`` stands for time t."""

    delta: tuple
    copies: tuple

    @property
    def expanded_T(self) -> int:
        return self.delta[-1] + self.copies[-1]

    def pull_back(self, s: Schedule) -> Schedule:
        """x_t := the expanded vector at the last copy of t."""
        ends = [d + c for d, c in zip(self.delta, self.copies)]
        out = []
        for v in s.insert_time:
            if v is None:
                out.append(None)
                continue
            t = next((k + 1 for k, e in enumerate(ends) if e >= v), None)
            out.append(t)
        return Schedule(out)

    def push_forward(self, s: Schedule) -> Schedule:
        """Replicate each x_t over its copies."""
        out = []
        for v in s.insert_time:
            if v is None:
                out.append(None)
                continue
            k = v - 1
            while k < len(self.copies) and self.copies[k] == 0:
                k += 1
            out.append(None if k == len(self.copies) else self.delta[k] + 1)
        return Schedule(out)


def reduce_ik_bounded(inst: IikInstance, t_cap: int = DEFAULT_T_CAP):
    """Unit-discount instance with ``discount_t`` copies of every time t.

    Zero discounts are allowed here (the time simply disappears).
    """
    delta, acc = [], 0
    for d in inst.discounts:
        if d < 0:
            raise InstanceError("discounts must be nonnegative")
        delta.append(acc)
        acc += d
    if acc > t_cap:
        raise InstanceError(f"expanded horizon {acc} exceeds the cap {t_cap}")
    if acc == 0:
        raise InstanceError("all discounts are zero")
    caps = []
    for b, d in zip(inst.capacities, inst.discounts):
        caps.extend([b] * d)
    expanded = IikInstance(inst.profits, inst.weights, caps, multiplicities=inst.multiplicities)
    return expanded, TimeMap(tuple(delta), tuple(inst.discounts))


def _check_monotone(discounts):
    if any(a > b for a, b in zip(discounts, discounts[1:])):
        raise InstanceError("discounts must be nondecreasing")


def scale_discounts(inst: IikInstance, eps):
    """Discounts floor(Delta_t / C) with C = eps * max(Delta) / (T n)."""
    eps = _check_eps(Fraction(eps))
    _check_monotone(inst.discounts)
    C = eps * max(inst.discounts) / (inst.T * inst.n)
    scaled = tuple(int(d // C) for d in inst.discounts)
    return _with_discounts(inst, scaled), C


def _with_discounts(inst, discounts):
    # IikInstance insists on positive discounts; scaled ones may hit zero
    obj = object.__new__(IikInstance)
    for name in ("profits", "weights", "capacities", "multiplicities"):
        object.__setattr__(obj, name, getattr(inst, name))
    object.__setattr__(obj, "discounts", tuple(discounts))
    return obj


def solve_ik(inst: IikInstance, eps, budget: Optional[int] = None,
             t_cap: int = DEFAULT_T_CAP) -> SolveReport:
    """Incremental knapsack with nondecreasing integer discounts, (1 - eps)-approximate."""
    eps = _check_eps(Fraction(eps))
    _check_monotone(inst.discounts)
    if inst.unit_discounts:
        rep = solve_ptas(inst, eps, budget)
        rep.chain = dict(scaled_discounts=inst.discounts, expanded_T=inst.T,
                         inner_eps=eps, inner_profit=rep.profit)
        return rep
    C = eps * max(inst.discounts) / (inst.T * inst.n)
    if C <= 1:
        scaled = inst
    else:
        scaled, _ = scale_discounts(inst, eps)
    expanded, tmap = reduce_ik_bounded(scaled, t_cap)
    inner = solve_ptas(expanded, eps / 2, budget)
    sched = tmap.pull_back(inner.schedule)
    profit = evaluate_profit(inst, sched)
    if not check_feasible(inst, sched):
        raise AssertionError("pulled-back schedule is infeasible")
    chain = dict(scaled_discounts=tuple(scaled.discounts), expanded_T=expanded.T,
                 inner_eps=eps / 2, inner_profit=inner.profit,
                 scaled_profit=evaluate_profit(scaled, sched))
    return SolveReport(sched, profit, eps, inner.eps_internal, inner.guarantee,
                       dict(inner.stats), chain)
