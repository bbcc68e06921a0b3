from fractions import Fraction as F

from incknap.lp import EQ, GE, LE, LinearProgram, Status, is_vertex, rank, solve_lp, tight_rows


def test_min_with_lower_row():
    lp = LinearProgram(1, [1], "min", lower=[0], upper=[10])
    lp.add({0: 1}, GE, 1)
    res = solve_lp(lp)
    assert res.optimal and res.x == [1] and res.value == 1


def test_two_variable_vertex():
    lp = LinearProgram(2, [1, F(3, 5)], "max", lower=[0, 0], upper=[1, 1])
    lp.add({0: 2, 1: 1}, LE, 2)
    res = solve_lp(lp)
    assert res.x == [F(1, 2), 1] and res.value == F(11, 10)
    assert is_vertex(lp, res.x)


def test_infeasible():
    lp = LinearProgram(1, [1], "max")
    lp.add({0: 1}, GE, 2)
    lp.add({0: 1}, LE, 1)
    assert solve_lp(lp).status is Status.INFEASIBLE


def test_unbounded():
    lp = LinearProgram(2, [1, 1], "max", upper=[None, None])
    lp.add({0: 1, 1: -1}, LE, 1)
    assert solve_lp(lp).status is Status.UNBOUNDED


def test_equality_and_degenerate_rows():
    lp = LinearProgram(3, [1, 1, 1], "min", lower=[0, 0, 0], upper=[1, 1, 1])
    lp.add({0: 1, 1: 1}, EQ, 1)
    lp.add({0: 1, 1: 1}, GE, 1)
    lp.add({2: 1}, GE, 0)
    res = solve_lp(lp)
    assert res.value == 1 and is_vertex(lp, res.x)


def test_no_constraints_uses_bounds():
    lp = LinearProgram(2, [-1, 2], "max", lower=[0, 0], upper=[3, 4])
    assert solve_lp(lp).x == [0, 4]


def test_rank_and_tight_rows():
    assert rank([{0: 1, 1: 1}, {0: 2, 1: 2}, {1: 1}]) == 2
    lp = LinearProgram(2, [1, 1], "max", lower=[0, 0], upper=[1, 1])
    lp.add({0: 1, 1: 1}, LE, 1)
    assert len(tight_rows(lp, [F(1, 2), F(1, 2)])) == 1
    assert not is_vertex(lp, [F(1, 2), F(1, 2)])
    assert is_vertex(lp, [1, 0])
