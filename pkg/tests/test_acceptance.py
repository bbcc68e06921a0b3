"""Acceptance criteria, one test each.

Every test logs a PASS/FAIL line that the terminal summary prints at the end
of the run.  Running this file directly prints the same lines without pytest:

    python3 tests/test_acceptance.py
"""

import functools
import itertools
import sys
import time
from fractions import Fraction

import pytest

from incknap import mink
from incknap.experiments import SUITES, brute_force_stairways, run_to_text, strip_timing
from incknap.pieces import enumerate_stairways
from incknap.preprocess import c_eps

HALF = Fraction(1, 2)


@functools.lru_cache(maxsize=None)
def suite(name):
    """(csv text, result, seconds) of one seeded run, shared by the criteria."""
    start = time.perf_counter()
    text, res = run_to_text(name, seed=0)
    return text, res, time.perf_counter() - start


def _records(name):
    return [c.record for c in suite(name)[1].results]


def criterion_1():
    text, res, secs = suite("iik-ptas")
    recs = _records("iik-ptas")
    bad = [r.instance for r in recs if r.value < (1 - HALF) * r.oracle]
    ok = len(recs) == 100 and not bad and res.ok and secs < 600
    worst = min(r.value / r.oracle for r in recs if r.oracle)
    return ok, f"{len(recs)} instances, min ratio {worst}, {secs:.1f}s, failures {res.failures or bad}"


def criterion_2():
    res = suite("iik-ptas")[1]
    checked = sum(c.metrics["pieces_checked"] for c in res.results)
    weight = sum(c.metrics["weight_fail"] for c in res.results)
    profit = sum(c.metrics["profit_fail"] for c in res.results)
    ok = checked > 0 and weight == 0 and profit == 0
    return ok, f"{checked} pieces, weight mismatches {weight}, profit mismatches {profit}"


def criterion_3():
    total, bad = 0, 0
    for name in ("iik-ptas", "iik-multi"):
        for c in suite(name)[1].results:
            total += c.metrics["pieces_checked"]
            bad += c.metrics["fractional_fail"]
    return total > 0 and bad == 0, f"{total} traces, violations {bad}"


def criterion_4():
    start = time.perf_counter()
    bad = []
    for J, K in itertools.product(range(1, 6), range(0, 6)):
        bound = 2 ** (K + J + 1)
        full = {s.entries for s in enumerate_stairways(J, K, False, include_empty=True)}
        one_in = {s.entries for s in enumerate_stairways(J, K, True)}
        if full != brute_force_stairways(J, K, False) or len(full) > bound:
            bad.append((J, K))
        if one_in != brute_force_stairways(J, K, True):
            bad.append((J, K, "k1"))
    secs = time.perf_counter() - start
    res = suite("stairways")[1]
    ok = not bad and res.ok and secs < 1
    return ok, f"36 (J, K) pairs in {secs:.3f}s, mismatches {bad or 'none'}"


def criterion_5():
    res = suite("iik-wellbehaved")[1]
    worst = min(c.metrics["worst"] for c in res.results if c.metrics["worst"] is not None)
    ok = len(res.results) == 50 and res.ok and worst >= (1 - HALF) ** 2
    return ok, f"{len(res.results)} instances, worst 1-in ratio {worst}, failures {res.failures}"


def criterion_6():
    res = suite("mink-vertex")[1]
    solved = sum(c.metrics["solved"] for c in res.results)
    most = max(c.metrics["max_fractional"] for c in res.results)
    two = sum(c.metrics["two"] for c in res.results)
    bad_pair = sum(c.metrics.get("bad_pair", 0) for c in res.results)
    ok = solved >= 500 and most <= 2 and bad_pair == 0 and res.ok
    return ok, (f"{solved} vertices, max fractional {most}, {two} with two "
                f"(bad pairs {bad_pair}), failures {res.failures}")


def criterion_7():
    res = suite("mink-cover")[1]
    C = c_eps(Fraction(1, 4))
    good = sum(1 for c in res.results
               if c.metrics["contained"] and mink.in_gamma(c.metrics["tau"], C))
    return good == 100 and res.ok, f"{good}/100 solutions covered by a piece"


def criterion_8():
    res = suite("mink-gap")[1]
    eps = Fraction(1, 16)
    recs = _records("mink-gap")
    sandwich = all(c.record.value <= c.record.oracle <= c.metrics["rounded"]
                   for c in res.results)
    gaps = [c.metrics["gap"] for c in res.results]
    worst = max(gaps)
    ok = len(recs) == 30 and sandwich and worst <= 1 + 2 * eps and res.ok
    return ok, f"30 instances, sandwich {'holds' if sandwich else 'broken'}, max OPT/LP {worst}"


def criterion_9():
    res = suite("iik-multi")[1]
    recs = _records("iik-multi")
    bad = [r.instance for r in recs if r.value < (1 - HALF) * r.oracle]
    same = all(c.metrics["unit_identical"] for c in res.results)
    ok = len(recs) == 50 and not bad and same and res.ok
    worst = min(r.value / r.oracle for r in recs if r.oracle)
    return ok, f"min ratio {worst}, d = 1 reports identical: {same}, failures {res.failures or bad}"


def criterion_10():
    res = suite("ik-discount")[1]
    recs = _records("ik-discount")
    bad = [r.instance for r in recs if r.value < (1 - 2 * HALF) * r.oracle]
    ok = len(recs) == 50 and not bad and res.ok
    worst = min(r.value / r.oracle for r in recs if r.oracle)
    return ok, f"min ratio {worst}, failures {res.failures or bad}"


def criterion_11():
    start = time.perf_counter()
    half, quarter, sixteenth = HALF, Fraction(1, 4), Fraction(1, 16)
    got = (mink.count_pieces(half, "baseline"), mink.count_pieces(half, "gamma"),
           mink.count_pieces(quarter, "baseline"), mink.count_pieces(quarter, "gamma"))
    g16 = mink.count_pieces(sixteenth, "gamma")
    b16 = mink.count_pieces(sixteenth, "baseline")
    secs = time.perf_counter() - start
    ok = got == (9, 9, 78125, 1901) and b16 == 17 ** 46 and g16 < b16 and secs < 1
    return ok, f"counts {got}, eps=1/16 gamma has {len(str(g16))} digits vs 17^46, {secs:.3f}s"


def criterion_12():
    differ = []
    for name in SUITES:
        first = suite(name)[0]
        again, _ = run_to_text(name, seed=0)
        if strip_timing(first) != strip_timing(again):
            differ.append(name)
    return not differ, f"{len(SUITES)} suites rerun, differing: {differ or 'none'}"


CRITERIA = {
    1: ("PTAS ratio at eps 1/2 on 100 instances", criterion_1),
    2: ("rounding keeps weight and profit per time", criterion_2),
    3: ("one fractional item per class and time", criterion_3),
    4: ("stairway counts match brute force", criterion_4),
    5: ("well-behaved transform properties", criterion_5),
    6: ("min-knapsack vertex structure", criterion_6),
    7: ("every 0/1 solution is covered", criterion_7),
    8: ("integrality gap at most 9/8", criterion_8),
    9: ("multiplicity solver", criterion_9),
    10: ("discount reductions", criterion_10),
    11: ("relaxation sizes", criterion_11),
    12: ("deterministic CSV output", criterion_12),
}


def _line(num, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {CRITERIA[num][0]}: {detail}"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, acceptance_log):
    ok, detail = CRITERIA[num][1]()
    acceptance_log[num] = _line(num, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num in sorted(CRITERIA):
        ok, detail = CRITERIA[num][1]()
        failed += not ok
        print(_line(num, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
