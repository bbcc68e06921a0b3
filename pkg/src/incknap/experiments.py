"""Seeded experiment suites that compare the algorithms with the exact oracles.

Every suite is a list of independent cases; each case yields one CSV row
and a list of failed hard checks.  Ratios are value/oracle for maximisation
and OPT/LP for the min-knapsack gap.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import mink
from .generators import IikParams, MinkParams, Rng, gen_iik, gen_mink
from .io import serialize_instance
from .lp import is_vertex
from .model import (MinkInstance, Schedule, check_feasible, evaluate_profit, fraction_str,
                    normalize_iik)
from .oracle import exact_iik, exact_mink
from .pieces import enumerate_stairways
from .preprocess import c_eps, is_well_behaved, one_in_restrict, well_behave
from .solver import reduce_ik_bounded, solve_ik, solve_multi, solve_ptas

FIELDS = ["suite", "instance", "seed", "eps", "algorithm", "value", "value_dec", "oracle",
          "oracle_dec", "ratio", "ratio_dec", "pieces", "pruned", "solved", "ms",
          "guarantee", "ok", "detail"]
TIMING_FIELDS = ("ms",)
HALF = Fraction(1, 2)


def decimal_str(q: Optional[Fraction], places: int = 6) -> str:
    if q is None:
        return ""
    scaled = round(q * 10 ** places)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


@dataclass
class ResultRecord:
    suite: str
    instance: str
    seed: int
    eps: Optional[Fraction]
    algorithm: str
    value: Optional[Fraction] = None
    oracle: Optional[Fraction] = None
    ratio: Optional[Fraction] = None
    pieces: Optional[int] = None
    pruned: Optional[int] = None
    solved: Optional[int] = None
    ms: float = 0.0
    guarantee: str = ""
    ok: bool = True
    detail: str = ""

    def row(self) -> list:
        def opt(v):
            return "" if v is None else str(v)
        return [self.suite, self.instance, self.seed, fraction_str(self.eps), self.algorithm,
                fraction_str(self.value), decimal_str(self.value),
                fraction_str(self.oracle), decimal_str(self.oracle),
                fraction_str(self.ratio), decimal_str(self.ratio),
                opt(self.pieces), opt(self.pruned), opt(self.solved),
                f"{self.ms:.1f}", self.guarantee, "1" if self.ok else "0", self.detail]


@dataclass
class CaseResult:
    record: ResultRecord
    failures: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    artifact: Optional[str] = None        # serialized counterexample instance


def _ratio(value, oracle):
    if value is None or oracle is None:
        return None
    if oracle == 0:
        return Fraction(1) if value == 0 else None
    return value / oracle


def _detail(**kv) -> str:
    parts = []
    for k, v in kv.items():
        if isinstance(v, Fraction):
            v = fraction_str(v)
        parts.append(f"{k}={v}")
    return ";".join(parts)


# per-piece rounding checks ------------------------------------------------

class TraceChecker:
    """Observer that checks each rounded piece and keeps tallies."""

    def __init__(self):
        self.pieces = 0
        self.weight_fail = 0
        self.profit_fail = 0
        self.fractional_fail = 0
        self.monotone_fail = 0
        self.membership_fail = 0
        self.floor_fail = 0
        self.min_floor_ratio = None
        self.messages = []

    def __call__(self, info):
        piece, xstar, trace = info["piece"], info["xstar"], info["trace"]
        fr = piece.frame
        self.pieces += 1
        x = piece.expand(xstar)
        w, p = fr.weights, fr.profits
        for t in range(1, fr.T + 1):
            xb = trace.xbar[t]
            if sum(w[i] * xb[i] for i in range(fr.n)) != sum(w[i] * x[t][i] for i in range(fr.n)):
                self.weight_fail += 1
                self.messages.append(f"weight mismatch at t={t}")
            if sum(p[i] * xb[i] for i in range(fr.n)) != sum(p[i] * x[t][i] for i in range(fr.n)):
                self.profit_fail += 1
                self.messages.append(f"profit mismatch at t={t}")
            per_class = {}
            for i in trace.fractional(t):
                per_class[fr.classes[i]] = per_class.get(fr.classes[i], 0) + 1
            if any(v > 1 for v in per_class.values()):
                self.fractional_fail += 1
                self.messages.append(f"two fractional items in one class at t={t}")
            if any(xb[i] < trace.xbar[t - 1][i] for i in range(fr.n)):
                self.monotone_fail += 1
            load = sum(w[i] * xb[i] for i in range(fr.n))
            if load > fr.capacities[t - 1]:
                self.membership_fail += 1
            for i in range(fr.n):
                hi = piece.hi[t][i]
                if xb[i] < piece.lo[t][i] or (hi is not None and xb[i] > hi):
                    self.membership_fail += 1
                    break
        lp_value = info["lp_value"]
        floor_profit = info["wb_profit"]
        if lp_value > 0:
            q = floor_profit / lp_value
            if self.min_floor_ratio is None or q < self.min_floor_ratio:
                self.min_floor_ratio = q
        if floor_profit < (1 - 2 * fr.eps) * lp_value:
            self.floor_fail += 1
            self.messages.append("floored profit below (1-2eps) of the piece LP")

    def failures(self) -> list:
        out = []
        for name in ("weight_fail", "profit_fail", "fractional_fail", "monotone_fail",
                     "membership_fail", "floor_fail"):
            v = getattr(self, name)
            if v:
                out.append(f"{name}={v}")
        return out

    def metrics(self) -> dict:
        return dict(pieces_checked=self.pieces, weight_fail=self.weight_fail,
                    profit_fail=self.profit_fail, fractional_fail=self.fractional_fail,
                    monotone_fail=self.monotone_fail, membership_fail=self.membership_fail,
                    floor_fail=self.floor_fail, min_floor_ratio=self.min_floor_ratio)


# suites ----------------------------------------------------------------

def _iik_ptas(index: int, seed: int) -> CaseResult:
    eps = HALF
    rng = Rng(seed)
    n, T = rng.integer(3, 8), rng.integer(2, 4)
    inst = gen_iik(seed + 1, IikParams(n=n, T=T))
    oracle = exact_iik(inst).value
    checker = TraceChecker()
    start = time.perf_counter()
    rep = solve_ptas(inst, eps, observer=checker)
    ms = (time.perf_counter() - start) * 1000
    ratio = _ratio(rep.profit, oracle)
    failures = checker.failures()
    if rep.profit < (1 - eps) * oracle:
        failures.append(f"ratio {fraction_str(ratio)} below {fraction_str(1 - eps)}")
    if not check_feasible(inst, rep.schedule):
        failures.append("infeasible schedule")
    rec = ResultRecord("iik-ptas", f"iik-{index}", seed, eps, "ptas", rep.profit, oracle, ratio,
                       rep.stats["pieces"], rep.stats["pruned"], rep.stats["lp_solves"], ms,
                       rep.guarantee, not failures,
                       _detail(n=n, T=T, traces=checker.pieces,
                               min_floor_ratio=checker.min_floor_ratio or ""))
    return CaseResult(rec, failures, checker.metrics())


def _iik_wellbehaved(index: int, seed: int) -> CaseResult:
    eps = HALF
    rng = Rng(seed)
    n, T = rng.integer(2, 6), rng.integer(1, 4)
    inst = gen_iik(seed + 1, IikParams(n=n, T=T))
    norm = normalize_iik(inst)
    failures = []
    worst = None
    start = time.perf_counter()
    guesses = 0
    for g in range(norm.instance.n if norm.instance else 0):
        sub, _ = one_in_restrict(norm.instance, g)
        wb, _ = well_behave(sub, eps)
        guesses += 1
        if not is_well_behaved(wb, eps):
            failures.append(f"guess {g}: not well-behaved")
        if any(a > b for a, b in zip(wb.capacities, sub.capacities)):
            failures.append(f"guess {g}: capacity increased")
        for q, p in zip(wb.profits, sub.profits):
            if not p / (1 + eps) <= q <= p:
                failures.append(f"guess {g}: profit rounded out of range")
                break
        before = exact_iik(sub, force_in=0).value
        after = exact_iik(wb, force_in=0).value
        if after < (1 - eps) ** 2 * before:
            failures.append(f"guess {g}: 1-in optimum dropped below (1-eps)^2")
        r = _ratio(after, before)
        if worst is None or r < worst[0]:
            worst = (r, after, before)
    ms = (time.perf_counter() - start) * 1000
    r, after, before = worst if worst else (None, None, None)
    rec = ResultRecord("iik-wellbehaved", f"iik-{index}", seed, eps, "well-behave", after, before,
                       r, None, None, None, ms, "full", not failures,
                       _detail(n=n, T=T, guesses=guesses))
    return CaseResult(rec, failures, dict(guesses=guesses, worst=r))


def _vertex_instance(seed: int):
    rng = Rng(seed)
    eps = Fraction(1, 4) if seed % 2 == 0 else Fraction(1, 16)
    n = rng.integer(3, 9)
    inst = gen_mink(seed + 1, MinkParams(n=n))
    return eps, inst


def _mink_vertex(index: int, seed: int) -> CaseResult:
    eps, inst = _vertex_instance(seed)
    tally = dict(solved=0, max_fractional=0, two=0, non_vertex=0)
    failures = []

    def watch(info):
        piece, x = info["piece"], info["x"]
        tally["solved"] += 1
        frac = [i for i, v in enumerate(x) if v.denominator != 1]
        tally["max_fractional"] = max(tally["max_fractional"], len(frac))
        if len(frac) == 2:
            tally["two"] += 1
            r, q = frac
            h = piece.bucket_of(r)
            if h is None or h != piece.bucket_of(q) or x[r] + x[q] != 1:
                tally["bad_pair"] = tally.get("bad_pair", 0) + 1
                failures.append("two fractional entries outside one bucket or not summing to 1")
        if len(frac) > 2:
            failures.append(f"{len(frac)} fractional entries")
        if not mink_is_vertex(piece, x):
            tally["non_vertex"] += 1
            failures.append("LP point is not a vertex")

    start = time.perf_counter()
    try:
        rep = mink.disjunction_gap(inst, eps, observer=watch)
    except mink.VertexStructureError as exc:
        failures.append(str(exc))
        rep = None
    ms = (time.perf_counter() - start) * 1000
    rec = ResultRecord("mink-vertex", f"mink-{index}", seed, eps, "disjunction",
                       rep and rep.lp_disj, rep and rep.opt, rep and rep.gap,
                       rep and rep.stats["pieces"], rep and rep.stats["duplicates"],
                       tally["solved"], ms, rep.guarantee if rep else "", not failures,
                       _detail(n=inst.n, max_fractional=tally["max_fractional"],
                               two_fractional=tally["two"]))
    return CaseResult(rec, failures, tally)


def mink_is_vertex(piece, x) -> bool:
    return is_vertex(piece.lp, x)


def _mink_cover(index: int, seed: int) -> CaseResult:
    eps = Fraction(1, 4)
    rng = Rng(seed)
    n = rng.integer(2, 10)
    base = gen_mink(seed + 1, MinkParams(n=n))
    order = sorted(range(n), key=lambda i: -base.costs[i])
    costs = [base.costs[i] for i in order]
    weights = [base.weights[i] for i in order]
    xhat = [1] + [rng.integer(0, 1) for _ in range(n - 1)]
    load = sum(w for w, v in zip(weights, xhat) if v)
    inst = MinkInstance(costs, weights, rng.integer(1, int(load)))
    start = time.perf_counter()
    tau, rho = mink.cover(inst, xhat, eps)
    C = c_eps(eps)
    failures = []
    if not mink.in_gamma(tau, C):
        failures.append(f"tau {tau} not in Gamma")
    if len(tau) > math.isqrt(4 * C - 1) + 1:          # ceil(2 sqrt C)
        failures.append("tau too long")
    if any(r < 1 for r in rho):
        failures.append("rho has a zero entry")
    piece = mink.build_mink_piece(inst, 0, tau, rho, eps)
    contained = piece is not None and piece.contains(xhat)
    if not contained:
        failures.append("solution not contained in its piece")
    ms = (time.perf_counter() - start) * 1000
    rec = ResultRecord("mink-cover", f"cover-{index}", seed, eps, "cover",
                       Fraction(len(tau)), None, None, 1, 0, 0, ms, "full", not failures,
                       _detail(tau="-".join(map(str, tau)), rho="-".join(map(str, rho))))
    return CaseResult(rec, failures, dict(tau=tau, rho=rho, contained=contained))


def _mink_gap(index: int, seed: int) -> CaseResult:
    eps = Fraction(1, 16)
    rng = Rng(seed)
    n = rng.integer(4, 12)
    inst = gen_mink(seed + 1, MinkParams(n=n, levels=3, eps=eps))
    start = time.perf_counter()
    rep = mink.disjunction_gap(inst, eps)
    ms = (time.perf_counter() - start) * 1000
    failures = []
    if not (rep.lp_disj <= rep.opt <= rep.best_rounded):
        failures.append("sandwich LP <= OPT <= rounded violated")
    gap = rep.gap
    if gap is None or gap > 1 + 2 * eps:
        failures.append(f"gap {fraction_str(gap) if gap else 'inf'} above 1+2eps")
    rec = ResultRecord("mink-gap", f"mink-{index}", seed, eps, "disjunction", rep.lp_disj,
                       rep.opt, gap, rep.stats["pieces"], rep.stats["duplicates"],
                       rep.stats["lp_solves"], ms, rep.guarantee, not failures,
                       _detail(n=n, rounded=rep.best_rounded,
                               rounding_ratio=rep.rounding_ratio or ""))
    art = serialize_instance(inst) if failures else None
    return CaseResult(rec, failures, dict(gap=gap, rounded=rep.best_rounded), art)


def _iik_multi(index: int, seed: int) -> CaseResult:
    eps = HALF
    rng = Rng(seed)
    n, T = rng.integer(2, 5), rng.integer(1, 3)
    inst = gen_iik(seed + 1, IikParams(n=n, T=T, max_multiplicity=3))
    oracle = exact_iik(inst).value
    checker = TraceChecker()
    start = time.perf_counter()
    rep = solve_multi(inst, eps, observer=checker)
    ms = (time.perf_counter() - start) * 1000
    failures = [f for f in checker.failures() if not f.startswith("floor_fail")]
    ratio = _ratio(rep.profit, oracle)
    if rep.profit < (1 - eps) * oracle:
        failures.append(f"ratio {fraction_str(ratio)} below {fraction_str(1 - eps)}")
    if not check_feasible(inst, rep.schedule):
        failures.append("infeasible schedule")
    binary = inst.replace(multiplicities=())
    same = solve_multi(binary, eps).record(T) == solve_ptas(binary, eps).record(T)
    if not same:
        failures.append("multiplicity solver differs from 0/1 solver on d = 1")
    rec = ResultRecord("iik-multi", f"multi-{index}", seed, eps, "ptas-multi", rep.profit, oracle,
                       ratio, rep.stats["pieces"], rep.stats["pruned"], rep.stats["lp_solves"],
                       ms, rep.guarantee, not failures,
                       _detail(n=n, T=T, d="-".join(str(d) for d in inst.multiplicities),
                               unit_identical=int(same)))
    metrics = checker.metrics()
    metrics["unit_identical"] = same
    return CaseResult(rec, failures, metrics)


def _random_schedule(rng: Rng, n: int, T: int) -> Schedule:
    return Schedule([None if rng.integer(0, T) == 0 else rng.integer(1, T) for _ in range(n)])


def _ik_discount(index: int, seed: int) -> CaseResult:
    eps = HALF
    rng = Rng(seed)
    n, T = rng.integer(2, 6), rng.integer(1, 3)
    inst = gen_iik(seed + 1, IikParams(n=n, T=T, max_discount=4))
    expanded, tmap = reduce_ik_bounded(inst)
    failures = []
    unconstrained = inst.replace(capacities=[sum(inst.weights)] * T)
    wide, wmap = reduce_ik_bounded(unconstrained)
    for _ in range(5):
        s = _random_schedule(rng, n, T)
        if evaluate_profit(unconstrained, s) != evaluate_profit(wide, wmap.push_forward(s)):
            failures.append("profit identity broken on a replicated schedule")
        e = _random_schedule(rng, n, wide.T)
        if evaluate_profit(unconstrained, wmap.pull_back(e)) < evaluate_profit(wide, e):
            failures.append("pulled-back profit below expanded profit")
    oracle = exact_iik(inst).value
    start = time.perf_counter()
    rep = solve_ik(inst, eps)
    ms = (time.perf_counter() - start) * 1000
    ratio = _ratio(rep.profit, oracle)
    if rep.profit < (1 - 2 * eps) * oracle:
        failures.append("ratio below 1-2eps")
    if not check_feasible(inst, rep.schedule):
        failures.append("infeasible schedule")
    rec = ResultRecord("ik-discount", f"ik-{index}", seed, eps, "ik-reduction", rep.profit,
                       oracle, ratio, rep.stats["pieces"], rep.stats["pruned"],
                       rep.stats["lp_solves"], ms, rep.guarantee, not failures,
                       _detail(n=n, T=T, discounts="-".join(map(str, inst.discounts)),
                               expanded_T=expanded.T))
    return CaseResult(rec, failures, dict(ratio=ratio))


def brute_force_stairways(J: int, K: int, require_k1_zero: bool) -> set:
    """Stairways as pairs of equal-size index sets, matched in opposite orders."""
    out = set()
    for m in range(0, min(J, K + 1) + 1):
        for js in itertools.combinations(range(1, J + 1), m):
            for ks in itertools.combinations(range(K + 1), m):
                entries = tuple(zip(sorted(js, reverse=True), ks))
                if require_k1_zero and (not entries or entries[0][1] != 0):
                    continue
                out.add(entries)
    return out


def _stairways(index: int, seed: int) -> CaseResult:
    J, K = index // 6 + 1, index % 6
    start = time.perf_counter()
    full = {s.entries for s in enumerate_stairways(J, K, require_k1_zero=False, include_empty=True)}
    listed = list(enumerate_stairways(J, K, require_k1_zero=False, include_empty=True))
    one_in = {s.entries for s in enumerate_stairways(J, K)}
    ms = (time.perf_counter() - start) * 1000
    failures = []
    if full != brute_force_stairways(J, K, False) or len(listed) != len(full):
        failures.append("unrestricted stairways differ from brute force")
    if one_in != brute_force_stairways(J, K, True):
        failures.append("k1 = 0 stairways differ from brute force")
    bound = 2 ** (K + J + 1)
    if len(full) > bound:
        failures.append("count exceeds 2^(K+J+1)")
    rec = ResultRecord("stairways", f"J{J}-K{K}", seed, None, "enumerate",
                       Fraction(len(full)), Fraction(bound), None,
                       len(full), None, None, ms, "full", not failures,
                       _detail(J=J, K=K, with_k1_zero=len(one_in)))
    return CaseResult(rec, failures, dict(J=J, K=K, count=len(full), k1=len(one_in), bound=bound))


SIZE_EPS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 16))
SIZE_EXPECTED = {Fraction(1, 2): (9, 9), Fraction(1, 4): (78125, 1901)}


def _size(index: int, seed: int) -> CaseResult:
    eps = SIZE_EPS[index]
    start = time.perf_counter()
    base = mink.count_pieces(eps, "baseline")
    gam = mink.count_pieces(eps, "gamma")
    failures = []
    if eps in SIZE_EXPECTED and (base, gam) != SIZE_EXPECTED[eps]:
        failures.append(f"counts {base}/{gam} differ from {SIZE_EXPECTED[eps]}")
    if eps == Fraction(1, 16) and not (base == 17 ** 46 and gam < base):
        failures.append("gamma count not below baseline")
    C = c_eps(eps)
    brute = None
    if C <= 12:
        R = math.ceil(1 / eps)
        brute = sum(R ** len(t) for t in mink.enumerate_gamma(eps))
        if brute != gam:
            failures.append("DP count differs from enumeration")
    ms = (time.perf_counter() - start) * 1000
    rec = ResultRecord("size", f"eps-{fraction_str(eps)}", seed, eps, "count", Fraction(gam),
                       Fraction(base), Fraction(gam, base), None, None, None, ms, "full",
                       not failures, _detail(C=C, brute=brute if brute is not None else ""))
    return CaseResult(rec, failures, dict(eps=eps, baseline=base, gamma=gam))


@dataclass(frozen=True)
class Suite:
    name: str
    cases: int
    run: Optional[Callable]
    description: str


SUITES = {s.name: s for s in [
    Suite("iik-ptas", 100, _iik_ptas, "solve_ptas vs exact optimum, eps = 1/2"),
    Suite("iik-wellbehaved", 50, _iik_wellbehaved, "well-behaved transform and 1-in optimum"),
    Suite("mink-vertex", 40, _mink_vertex, "fractional structure of piece vertices"),
    Suite("mink-cover", 100, _mink_cover, "every 0/1 solution lies in some piece"),
    Suite("mink-gap", 30, _mink_gap, "disjunctive LP gap with three cost levels, eps = 1/16"),
    Suite("iik-multi", 50, _iik_multi, "multiplicity solver vs exact optimum"),
    Suite("ik-discount", 50, _ik_discount, "discount reductions and solve_ik"),
    Suite("stairways", 30, _stairways, "stairway counts vs brute force, J, K <= 5"),
    Suite("size", 3, _size, "piece counts of the two min-knapsack relaxations"),
    Suite("empty", 0, None, "no cases"),
]}


def run_case(name: str, index: int, base_seed: int) -> CaseResult:
    suite = SUITES[name]
    return suite.run(index, base_seed + index)


def _run_case_args(args):
    return run_case(*args)


@dataclass
class ExperimentResult:
    suite: str
    results: list
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


def summary_record(name: str, results: list, seed: int) -> ResultRecord:
    ratios = [r.record.ratio for r in results if r.record.ratio is not None]
    lo = min(ratios) if ratios else None
    mean = sum(ratios, Fraction(0)) / len(ratios) if ratios else None
    bad = sum(1 for r in results if r.failures)
    return ResultRecord(name, "summary", seed, results[0].record.eps if results else None,
                        "summary", None, None, lo, len(results), None, None,
                        sum(r.record.ms for r in results), "", bad == 0,
                        _detail(min_ratio=lo if lo is not None else "",
                                mean_ratio=decimal_str(mean), failed_cases=bad))


def run_experiment(name: str, out=None, seed: int = 0, workers: int = 1,
                   limit: Optional[int] = None, artifacts: Optional[str] = None) -> ExperimentResult:
    """Run suite ``name``; rows go to ``out`` (path or text file) as they finish."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    count = suite.cases if limit is None else min(limit, suite.cases)
    close = False
    if isinstance(out, (str, os.PathLike)):
        fh = open(out, "w", encoding="utf-8", newline="")
        close = True
    else:
        fh = out
    writer = csv.writer(fh, lineterminator="\n") if fh is not None else None
    if writer:
        writer.writerow(FIELDS)
        fh.flush()
    results, failures = [], []
    args = [(name, i, seed) for i in range(count)]
    try:
        if workers > 1 and count > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                stream = pool.map(_run_case_args, args)
                for res in stream:
                    _consume(res, results, failures, writer, fh, artifacts)
        else:
            for a in args:
                _consume(run_case(*a), results, failures, writer, fh, artifacts)
        if writer and results:
            writer.writerow(summary_record(name, results, seed).row())
            fh.flush()
    finally:
        if close:
            fh.close()
    return ExperimentResult(name, results, failures)


def _consume(res: CaseResult, results, failures, writer, fh, artifacts):
    results.append(res)
    for f in res.failures:
        failures.append(f"{res.record.instance}: {f}")
    if writer:
        writer.writerow(res.record.row())
        fh.flush()
    if artifacts and res.artifact:
        os.makedirs(artifacts, exist_ok=True)
        path = os.path.join(artifacts, f"{res.record.suite}-{res.record.instance}.json")
        with open(path, "w", encoding="utf-8") as af:
            af.write(res.artifact)


def strip_timing(csv_text: str) -> str:
    """Drop the timing columns so reruns can be compared byte for byte."""
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows:
        return ""
    keep = [i for i, h in enumerate(rows[0]) if h not in TIMING_FIELDS]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([r[i] for i in keep])
    return buf.getvalue()


def run_to_text(name: str, seed: int = 0, **kw) -> tuple:
    buf = io.StringIO()
    res = run_experiment(name, buf, seed=seed, **kw)
    return buf.getvalue(), res
