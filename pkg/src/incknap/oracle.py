"""Exact solvers for small instances, used as ground truth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (IikInstance, MinkInstance, MultiSchedule, Schedule, check_feasible,
                    evaluate_profit)

ZERO = Fraction(0)
DEFAULT_STATE_CAP = 10 ** 8


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: Optional[Fraction]       # None when infeasible
    solution: object
    nodes: int

    @property
    def feasible(self) -> bool:
        return self.value is not None


def _copy_limit(inst: IikInstance, i: int) -> int:
    d = inst.multiplicities[i]
    top = int(inst.capacities[-1] // inst.weights[i])
    return top if d is None else min(d, top)


def _count_vectors(T: int, top: int):
    """Nondecreasing count vectors of length T with entries in 0..top, emptiest first."""
    def rec(prefix, lo):
        if len(prefix) == T:
            yield tuple(prefix)
            return
        for v in range(lo, top + 1):
            prefix.append(v)
            yield from rec(prefix, v)
            prefix.pop()
    yield from rec([], 0)


def exact_iik(inst: IikInstance, force_in: Optional[int] = None,
              state_cap: int = DEFAULT_STATE_CAP, use_bound: bool = True) -> OracleResult:
    """Exhaustive depth-first search over insertion times (or count vectors).

    ``force_in`` names an item that must be present at time T.  With
    ``use_bound=False`` only capacity pruning is applied, so on instances
    with ample capacity the node count equals the size of the search space.
    """
    T, n = inst.T, inst.n
    multi = not inst.binary
    disc = inst.discounts
    suffix = [0] * (T + 2)     # suffix[t] = sum of discounts over times t..T
    for t in range(T, 0, -1):
        suffix[t] = suffix[t + 1] + disc[t - 1]

    if multi:
        options = []
        space = 1
        for i in range(n):
            top = _copy_limit(inst, i)
            opts = list(_count_vectors(T, top))
            if force_in == i:
                opts = [o for o in opts if o[-1] >= 1]
            options.append(opts)
            space *= len(opts)
    else:
        options = []
        space = 1
        for i in range(n):
            opts = [None] + list(range(1, T + 1)) if force_in != i else list(range(1, T + 1))
            options.append(opts)
            space *= len(opts)
    if space > state_cap:
        raise OracleCapExceeded(f"search space {space} exceeds cap {state_cap}")

    def gain(i, opt):
        p = inst.profits[i]
        if multi:
            return p * sum(disc[t] * opt[t] for t in range(T))
        return ZERO if opt is None else p * suffix[opt]

    def usage(i, opt):
        if multi:
            return [inst.weights[i] * c for c in opt]
        return [inst.weights[i] if opt is not None and t + 1 >= opt else ZERO for t in range(T)]

    table = [[(opt, gain(i, opt), usage(i, opt)) for opt in options[i]] for i in range(n)]
    optimistic = [max(g for _, g, _ in row) for row in table]
    rest = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        rest[i] = rest[i + 1] + optimistic[i]

    load = [ZERO] * T
    cap = inst.capacities
    choice = [None] * n
    best = [None, None]
    nodes = 0

    def rec(i, value):
        nonlocal nodes
        nodes += 1
        if nodes > state_cap:
            raise OracleCapExceeded(f"explored more than {state_cap} nodes")
        if i == n:
            if best[0] is None or value > best[0]:
                best[0], best[1] = value, list(choice)
            return
        if use_bound and best[0] is not None and value + rest[i] <= best[0]:
            return
        for opt, g, use in table[i]:
            ok = True
            for t in range(T):
                if use[t] and load[t] + use[t] > cap[t]:
                    ok = False
                    break
            if not ok:
                continue
            for t in range(T):
                load[t] += use[t]
            choice[i] = opt
            rec(i + 1, value + g)
            for t in range(T):
                load[t] -= use[t]

    rec(0, ZERO)
    if best[0] is None:
        return OracleResult(None, None, nodes)
    if multi:
        sol = MultiSchedule(tuple(tuple(best[1][i][t] for i in range(n)) for t in range(T)))
    else:
        sol = Schedule(best[1])
    assert check_feasible(inst, sol) and evaluate_profit(inst, sol) == best[0]
    return OracleResult(best[0], sol, nodes)


def exact_mink(inst: MinkInstance, method: str = "auto", cap: int = 10 ** 7) -> OracleResult:
    """Minimum cost cover of the demand; ``method`` is "exhaust", "dp" or "auto"."""
    integral = all(w.denominator == 1 for w in inst.weights)
    if method == "auto":
        method = "exhaust" if inst.n <= 24 else "dp"
    if method == "dp":
        if not integral:
            raise ValueError("weight DP needs integral weights")
        return _mink_dp(inst, cap)
    if method != "exhaust":
        raise ValueError(f"unknown method {method!r}")
    if inst.n > 24:
        raise OracleCapExceeded("subset exhaustion is limited to 24 items")
    return _mink_exhaust(inst)


def _mink_exhaust(inst: MinkInstance) -> OracleResult:
    n = inst.n
    c, w, beta = inst.costs, inst.weights, inst.demand
    tail = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + w[i]
    best = [None, None]
    x = [0] * n
    nodes = 0

    def rec(i, cost, load):
        nonlocal nodes
        nodes += 1
        if best[0] is not None and cost >= best[0]:
            return
        if load >= beta:
            if best[0] is None or cost < best[0]:
                best[0], best[1] = cost, list(x)
            return
        if i == n or load + tail[i] < beta:
            return
        x[i] = 1
        rec(i + 1, cost + c[i], load + w[i])
        x[i] = 0
        rec(i + 1, cost, load)

    rec(0, ZERO, ZERO)
    return OracleResult(best[0], best[1], nodes)


def _mink_dp(inst: MinkInstance, cap: int) -> OracleResult:
    need = math.ceil(inst.demand)
    if need > cap:
        raise OracleCapExceeded(f"demand {need} exceeds DP cap {cap}")
    n = inst.n
    INF = None
    # dp[i][s]: min cost using items i.. to add at least s more weight
    dp = [[INF] * (need + 1) for _ in range(n + 1)]
    dp[n][0] = ZERO
    for i in range(n - 1, -1, -1):
        wi, ci = int(inst.weights[i]), inst.costs[i]
        for s in range(need + 1):
            skip = dp[i + 1][s]
            sub = dp[i + 1][max(0, s - wi)]
            take = None if sub is None else sub + ci
            if skip is None:
                dp[i][s] = take
            elif take is None:
                dp[i][s] = skip
            else:
                dp[i][s] = min(skip, take)
    if dp[0][need] is None:
        return OracleResult(None, None, (n + 1) * (need + 1))
    x, s = [], need
    for i in range(n):
        # prefer skipping on ties so the reconstruction is deterministic
        if dp[i + 1][s] == dp[i][s]:
            x.append(0)
        else:
            x.append(1)
            s = max(0, s - int(inst.weights[i]))
    value = dp[0][need]
    assert inst.feasible(x) and inst.cost(x) == value
    return OracleResult(value, x, (n + 1) * (need + 1))
