from fractions import Fraction as F

import pytest

from incknap.model import IikInstance
from incknap.pieces import (Frame, RhoMap, Stairway, build_piece, enumerate_rho,
                            enumerate_stairways, rho_limits, stairway_blocks)

HALF = F(1, 2)


def entries(it):
    return [s.entries for s in it]


def test_stairways_small():
    assert entries(enumerate_stairways(2, 1)) == [((1, 0),), ((2, 0),), ((2, 0), (1, 1))]


def test_stairways_unrestricted_count():
    got = entries(enumerate_stairways(2, 1, require_k1_zero=False, include_empty=True))
    assert len(got) == 6 <= 2 ** (1 + 2 + 1)
    assert () in got


def test_stairways_trivial():
    assert entries(enumerate_stairways(1, 0)) == [((1, 0),)]


def test_stairway_validation():
    with pytest.raises(ValueError):
        Stairway(((1, 0), (2, 1)))          # times must decrease
    with pytest.raises(ValueError):
        Stairway(((2, 1), (1, 0)))          # classes must increase


def test_stairway_prune_drops_subtree():
    seen = list(enumerate_stairways(3, 2, prune=lambda prefix: prefix[0] == (3, 0)))
    assert all(s.entries[0] != (3, 0) for s in seen)
    assert len(seen) == len(list(enumerate_stairways(2, 2)))


def test_rho_count_before_pruning():
    maps = list(enumerate_rho(Stairway(((2, 0),)), HALF, (1, 2), T=2, K=2))
    assert len(maps) == 48
    assert {m.values[(2, 0)] for m in maps} == {1, 2, 3}


def test_rho_empty_classes_forced_to_zero():
    maps = list(enumerate_rho(Stairway(((2, 0),)), HALF, (1, 2), class_sizes=[9, 0, 0],
                              T=2, K=2))
    assert len(maps) == 3
    assert all(m.values.get((2, 1), 0) == 0 == m.values.get((2, 2), 0) for m in maps)


def test_rho_single_cell():
    assert len(list(enumerate_rho(Stairway(((1, 0),)), HALF, (1,), T=1, K=0))) == 3


def test_rho_limits():
    assert rho_limits(HALF) == (2, 3)
    assert rho_limits(F(1, 3)) == (3, 4)


def test_blocks_follow_the_steps():
    blocks = stairway_blocks(Stairway(((2, 0), (1, 1))), (1, 2), 2, 2, 2)
    assert [(b.start, b.stop, b.k, b.next_k) for b in blocks] == [(2, 3, 0, 1), (1, 2, 1, 3)]
    assert blocks[0].classes == (0, 1, 2) and blocks[1].classes == (1, 2)


def test_single_step_spans_everything():
    (b,) = stairway_blocks(Stairway(((1, 0),)), (1, 2), 2, 2, 2)
    assert (b.start, b.stop, b.times) == (1, 3, (1, 2))


def frame():
    return Frame.build(IikInstance([1, F(2, 3)], [1, 1], [1, 2]), HALF)


def test_frame_classes():
    fr = frame()
    assert fr.classes == (0, 1) and fr.times == (1, 2) and fr.K == 4


def test_pivot_fixed_from_first_time():
    fr = frame()
    s = Stairway(((1, 0),))
    p = build_piece(fr, s, RhoMap({(1, 0): 1, (2, 0): 1}, ((1, 0), (1, 1), (1, 2))))
    assert p is not None
    assert all(p.fixed(t, 0) and p.lo[t][0] == 1 for t in (1, 2))


def test_overdrawn_class_is_empty():
    fr = frame()
    s = Stairway(((1, 0),))
    assert build_piece(fr, s, RhoMap({(1, 0): 2}, ((1, 0), (1, 1), (1, 2)))) is None


def test_capacity_contradiction_is_empty():
    fr = frame()
    s = Stairway(((1, 0),))
    rho = RhoMap({(1, 0): 1, (1, 1): 1, (2, 0): 1, (2, 1): 1}, ((1, 0), (1, 1), (1, 2)))
    assert build_piece(fr, s, rho) is None      # two unit items at capacity 1


def test_frame_rejects_unrounded_profits():
    with pytest.raises(ValueError):
        Frame.build(IikInstance([1, F(3, 5)], [1, 1], [1]), HALF)


def test_upper_bound_dominates_lp():
    from incknap.lp import solve_lp
    fr = frame()
    s = Stairway(((1, 0),))
    for rho in enumerate_rho(s, HALF, fr.times, fr.class_sizes, T=fr.T, K=fr.K):
        p = build_piece(fr, s, rho)
        if p is None:
            continue
        res = solve_lp(p.lp)
        if res.optimal:
            assert res.value + p.constant <= p.upper_bound()
