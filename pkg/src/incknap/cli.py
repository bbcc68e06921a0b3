"""Command-line entry point.

Exit codes: 0 on success, 1 when an experiment's hard checks fail, 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import mink
from .experiments import SUITES, decimal_str, run_experiment
from .generators import GeneratorError, gen_random
from .io import InstanceFileError, read_instance, serialize_instance
from .model import IikInstance, InstanceError, MinkInstance, MultiSchedule, fraction_str
from .oracle import OracleCapExceeded, exact_iik, exact_mink
from .preprocess import c_eps
from .solver import solve_ik, solve_multi, solve_ptas


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    """An eps value such as ``1/4`` or ``0.25``, strictly between 0 and 1."""
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError(f"eps must lie strictly between 0 and 1, got {text}")
    return q


def _num(q):
    return None if q is None else {"exact": fraction_str(q), "decimal": decimal_str(q)}


def _schedule_json(s):
    if isinstance(s, MultiSchedule):
        return {"counts": [list(r) for r in s.count]}
    return {"insert_time": list(s.insert_time)}


def _emit(doc: dict, path):
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path, kind):
    inst = read_instance(path)
    want = IikInstance if kind == "iik" else MinkInstance
    if not isinstance(inst, want):
        raise UsageError(f"{path}: expected a {kind} instance")
    return inst


def _report_json(rep, inst):
    stats = {k: v for k, v in rep.stats.items()}
    return {"profit": _num(rep.profit), "schedule": _schedule_json(rep.schedule),
            "guarantee": rep.guarantee, "eps": fraction_str(rep.eps),
            "eps_internal": fraction_str(rep.eps_internal), "stats": stats,
            "chain": {k: (fraction_str(v) if isinstance(v, Fraction) else
                          list(v) if isinstance(v, tuple) else v)
                      for k, v in rep.chain.items()}}


def cmd_solve(args, solver):
    inst = _load(args.input, "iik")
    rep = solver(inst, args.eps, args.budget)
    _emit(_report_json(rep, inst), args.out)
    return 0


def cmd_exact_iik(args):
    inst = _load(args.input, "iik")
    res = exact_iik(inst)
    _emit({"value": _num(res.value), "nodes": res.nodes,
           "schedule": _schedule_json(res.solution) if res.solution else None}, args.out)
    return 0


def cmd_exact_mink(args):
    inst = _load(args.input, "mink")
    res = exact_mink(inst, args.method)
    _emit({"value": _num(res.value), "feasible": res.feasible, "solution": res.solution,
           "nodes": res.nodes}, args.out)
    return 0


def cmd_mink_gap(args):
    inst = _load(args.input, "mink")
    rep = mink.disjunction_gap(inst, args.eps, args.budget, mode=args.mode)
    doc = {"lp_disj": _num(rep.lp_disj), "opt": _num(rep.opt),
           "best_rounded": _num(rep.best_rounded), "gap": _num(rep.gap),
           "rounding_ratio": _num(rep.rounding_ratio), "solution": rep.best_solution,
           "guarantee": rep.guarantee, "stats": rep.stats}
    if args.csv:
        import csv
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["eps", "mode", "lp_disj", "opt", "best_rounded", "gap", "gap_dec",
                        "lp_solves", "guarantee"])
            w.writerow([fraction_str(Fraction(args.eps)), args.mode, fraction_str(rep.lp_disj),
                        fraction_str(rep.opt), fraction_str(rep.best_rounded),
                        fraction_str(rep.gap), decimal_str(rep.gap), rep.stats["lp_solves"],
                        rep.guarantee])
    _emit(doc, args.out)
    return 0


def cmd_mink_size(args):
    base = mink.count_pieces(args.eps, "baseline")
    gam = mink.count_pieces(args.eps, "gamma")
    _emit({"eps": fraction_str(Fraction(args.eps)), "C_eps": c_eps(args.eps),
           "baseline": str(base), "gamma": str(gam),
           "gamma_below_baseline": gam < base}, None)
    return 0


def cmd_gen(args):
    params = {}
    if args.kind == "iik":
        for key in ("n", "T"):
            if getattr(args, key) is not None:
                params[key] = getattr(args, key)
        if args.capacity:
            params["capacity"] = args.capacity
        if args.max_discount:
            params["max_discount"] = args.max_discount
        if args.max_multiplicity:
            params["max_multiplicity"] = args.max_multiplicity
    else:
        if args.n is not None:
            params["n"] = args.n
        if args.levels is not None:
            params["levels"] = args.levels
        if args.eps is not None:
            params["eps"] = args.eps
    inst = gen_random(args.kind, args.seed, **params)
    text = serialize_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_experiment(args):
    if args.list:
        for s in SUITES.values():
            print(f"{s.name:18s} {s.cases:4d}  {s.description}")
        return 0
    if not args.suite:
        raise UsageError("--suite is required (or use --list)")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = run_experiment(args.suite, args.csv or sys.stdout, seed=args.seed,
                         workers=args.workers, limit=args.limit, artifacts=args.artifacts)
    for f in res.failures:
        print(f"FAIL {f}", file=sys.stderr)
    return res.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="incknap", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, help_ in (("solve-iik", "approximate 0/1 incremental knapsack"),
                        ("solve-ik", "approximate incremental knapsack with discounts"),
                        ("solve-multi", "approximate incremental knapsack with multiplicities")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True)
        p.add_argument("--eps", required=True, type=_fraction)
        p.add_argument("--budget", type=int, default=None, help="maximum number of LP solves")
        p.add_argument("--out")

    p = sub.add_parser("exact-iik", help="exact optimum by search")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p = sub.add_parser("exact-mink", help="exact min-knapsack optimum")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["auto", "exhaust", "dp"], default="auto")
    p.add_argument("--out")

    p = sub.add_parser("mink-gap", help="disjunctive relaxation gap of one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--eps", required=True, type=_fraction)
    p.add_argument("--mode", choices=["gamma", "baseline"], default="gamma")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--csv")
    p.add_argument("--out")

    p = sub.add_parser("mink-size", help="piece counts of both relaxations")
    p.add_argument("--eps", required=True, type=_fraction)

    p = sub.add_parser("gen", help="random instance")
    p.add_argument("--kind", choices=["iik", "mink"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--capacity", choices=["random", "linear", "ample"])
    p.add_argument("--max-discount", type=int)
    p.add_argument("--max-multiplicity", type=int)
    p.add_argument("--levels", type=int)
    p.add_argument("--eps", type=_fraction)
    p.add_argument("--out")

    p = sub.add_parser("experiment", help="run a seeded suite and write CSV")
    p.add_argument("--suite")
    p.add_argument("--csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int)
    p.add_argument("--artifacts", help="directory for counterexample instances")
    p.add_argument("--list", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "solve-iik": lambda a: cmd_solve(a, solve_ptas),
        "solve-ik": lambda a: cmd_solve(a, solve_ik),
        "solve-multi": lambda a: cmd_solve(a, solve_multi),
        "exact-iik": cmd_exact_iik,
        "exact-mink": cmd_exact_mink,
        "mink-gap": cmd_mink_gap,
        "mink-size": cmd_mink_size,
        "gen": cmd_gen,
        "experiment": cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except (InstanceFileError, InstanceError, UsageError, GeneratorError, OracleCapExceeded,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
