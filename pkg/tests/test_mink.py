from collections import Counter
from fractions import Fraction as F

import pytest

from incknap.lp import solve_lp
from incknap.mink import (VertexStructureError, baseline_buckets, buckets_tau, build_mink_piece,
                          cost_level, count_pieces, cover, disjunction_gap, enumerate_gamma,
                          in_gamma, round_vertex)
from incknap.model import MinkInstance
from incknap.oracle import exact_mink

Q = F(1, 4)
B = 1 + Q


def test_gamma_quarter():
    gamma = list(enumerate_gamma(Q))
    assert len(gamma) == 50
    sizes = Counter(len(t) for t in gamma)
    assert [sizes[k] for k in range(5)] == [1, 7, 21, 20, 1]
    assert [t for t in gamma if len(t) == 4] == [(0, 1, 3, 6)]


def test_gamma_half():
    assert sorted(enumerate_gamma(F(1, 2))) == [(), (0,), (0, 1), (1,)]


def test_membership():
    assert in_gamma((0, 4), 7)
    assert not in_gamma((0, 0), 7)        # needs tau_k + k <= tau_k+1
    assert not in_gamma((0, 7), 7)        # entries stay below C
    assert in_gamma((), 7)


def test_gamma_pruned_by_empty_levels():
    levels = [0, 3]
    for tau in enumerate_gamma(Q, levels):
        assert in_gamma(tau, 7)
    assert len(list(enumerate_gamma(Q, levels))) < 50


def test_cost_levels():
    assert cost_level(F(9, 10), Q, 7) == 0
    assert cost_level(F(1, 2), Q, 7) == 3
    assert cost_level(B ** -3, Q, 7) == 3
    assert cost_level(B ** -8, Q, 7) is None


COSTS = [F(1), F(81, 100), F(4, 5), B ** -4, B ** -4 * F(99, 100), B ** -6, B ** -7, B ** -9]


def test_buckets_tau_example():
    fam = buckets_tau(COSTS, (0, 4), Q)
    assert fam.buckets == ((1,), (3, 4))          # (4/5, 1] and ((5/4)^-6, (5/4)^-4]
    assert fam.infinity == (6, 7)
    assert fam.widths == (1, 2)
    assert fam.is_ordered(COSTS, Q)


def test_buckets_empty_tau():
    fam = buckets_tau(COSTS, (), Q)
    assert fam.buckets == () and fam.infinity == (6, 7)


def test_baseline_has_one_bucket_per_level():
    fam = baseline_buckets(COSTS, Q)
    assert len(fam.buckets) == 7
    assert fam.buckets[0] == (1,) and fam.buckets[4] == (3, 4)


def example():
    return MinkInstance([1, F(9, 10), F(1, 2)], [3, 2, 2], 4)


def test_piece_example():
    p = build_mink_piece(example(), 0, (0,), (1,), Q)
    assert p.family.buckets == ((1,),)
    res = solve_lp(p.lp)
    # the pivot and the forced bucket item already meet the demand, and the
    # last item (cost 1/2, level 3) sits in no bucket and is held at zero
    assert res.x == [1, 1, 0] and res.value == F(19, 10)


def test_empty_tau_frees_only_the_tail():
    m = MinkInstance([1, F(1, 10), F(1, 20)], [1, 2, 2], 4)
    p = build_mink_piece(m, 0, (), (), Q)
    assert p.lp.lower[0] == p.lp.upper[0] == 1
    assert p.family.infinity == (1, 2)
    res = solve_lp(p.lp)
    assert res.x == [1, F(1, 2), 1]


def test_overdrawn_bucket():
    assert build_mink_piece(example(), 0, (0,), (2,), Q) is None


def test_round_integral_and_single_fraction():
    m = MinkInstance([1, F(1, 10), F(1, 20)], [1, 2, 2], 4)
    p = build_mink_piece(m, 0, (), (), Q)
    assert round_vertex(p, [1, 1, 1]) == [1, 1, 1]
    assert round_vertex(p, [1, F(1, 2), 1]) == [1, 1, 1]


def test_round_pair_in_one_bucket():
    m = MinkInstance([1, F(9, 10), F(17, 20)], [1, 3, 2], F(7, 2))
    p = build_mink_piece(m, 0, (0,), (1,), Q)
    assert p.family.buckets == ((1, 2),)
    x = [F(1), F(1, 2), F(1, 2)]
    assert p.contains(x)
    out = round_vertex(p, x)
    assert out == [1, 1, 0]                        # heavier item kept
    increase = p.cost(out) - p.cost(x)
    assert increase == F(1, 2) * (F(9, 10) - F(17, 20)) <= F(9, 10) - F(17, 20)


def test_round_rejects_three_fractions():
    m = MinkInstance([1, F(1, 10), F(1, 20), F(1, 30)], [1, 1, 1, 1], 2)
    p = build_mink_piece(m, 0, (), (), Q)
    with pytest.raises(VertexStructureError):
        round_vertex(p, [1, F(1, 3), F(1, 3), F(1, 3)])


def test_cover_example():
    m = MinkInstance([1, F(9, 10), F(1, 2)], [3, 2, 2], 4)
    assert cover(m, [1, 1, 1], Q) == ((0, 3), (1, 1))


def test_cover_pivot_only():
    m = MinkInstance([1, F(9, 10), F(1, 2)], [3, 2, 2], 3)
    assert cover(m, [1, 0, 0], Q) == ((), ())


def test_cover_needs_pivot():
    with pytest.raises(ValueError):
        cover(example(), [0, 1, 1], Q)


def test_count_pieces():
    assert count_pieces(F(1, 2), "baseline") == count_pieces(F(1, 2), "gamma") == 9
    assert count_pieces(Q, "baseline") == 78125
    assert count_pieces(Q, "gamma") == 1901
    assert count_pieces(Q, "gamma") == sum(4 ** len(t) for t in enumerate_gamma(Q))
    assert count_pieces(F(1, 16), "gamma") < count_pieces(F(1, 16), "baseline") == 17 ** 46


def test_gap_sandwich():
    m = MinkInstance([1, F(3, 5), F(1, 2)], [3, 2, 2], 4)
    rep = disjunction_gap(m, Q)
    assert rep.lp_disj <= rep.opt <= rep.best_rounded
    assert rep.opt == exact_mink(m).value == F(11, 10)
    assert m.feasible(rep.best_solution)


def test_gap_baseline_mode():
    m = MinkInstance([1, F(3, 5), F(1, 2)], [3, 2, 2], 4)
    rep = disjunction_gap(m, Q, mode="baseline")
    assert rep.lp_disj <= rep.opt == F(11, 10)


def test_gap_infeasible():
    rep = disjunction_gap(MinkInstance([1, 1], [1, 1], 5), Q)
    assert not rep.feasible
