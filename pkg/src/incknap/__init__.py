"""Approximation schemes for incremental knapsack and a compact min-knapsack relaxation."""

from .io import parse_instance, read_instance, serialize_instance, write_instance
from .generators import gen_iik, gen_mink, gen_random
from .lp import LinearProgram, solve_lp
from .mink import count_pieces, cover, disjunction_gap, enumerate_gamma
from .model import (IikInstance, MinkInstance, MultiSchedule, Schedule, check_feasible,
                    evaluate_profit)
from .oracle import exact_iik, exact_mink
from .preprocess import one_in_restrict, well_behave
from .solver import solve_ik, solve_multi, solve_ptas

__all__ = [
    "IikInstance", "MinkInstance", "Schedule", "MultiSchedule", "check_feasible",
    "evaluate_profit", "LinearProgram", "solve_lp", "one_in_restrict", "well_behave",
    "solve_ptas", "solve_multi", "solve_ik", "exact_iik", "exact_mink", "enumerate_gamma",
    "cover", "disjunction_gap", "count_pieces", "parse_instance", "read_instance",
    "serialize_instance", "write_instance", "gen_iik", "gen_mink", "gen_random",
]
