from fractions import Fraction as F

import pytest

from incknap.model import IikInstance, Schedule, check_feasible
from incknap.preprocess import (c_eps, ceil_log, floor_log, flattened_capacities, is_well_behaved,
                                lift_solution, one_in_restrict, profit_class, significant_times,
                                well_behave)

HALF = F(1, 2)


def test_restrict_rescales():
    inst = IikInstance([1, F(4, 5), F(1, 2)], [1, 1, 1], [1, 2])
    sub, m = one_in_restrict(inst, 1)
    assert sub.profits == (1, F(5, 8))
    assert m.scale == F(4, 5) and m.start == 1


def test_restrict_first_item_is_identity():
    inst = IikInstance([1, F(4, 5)], [1, 2], [3])
    sub, m = one_in_restrict(inst, 0)
    assert sub.profits == inst.profits and m.scale == 1


def test_restrict_single_item():
    sub, _ = one_in_restrict(IikInstance([F(7, 3)], [1], [1]), 0)
    assert sub.profits == (1,)


@pytest.mark.parametrize("T, eps, times", [
    (14, HALF, (3, 7, 9, 11, 12, 13, 14)),
    (2, HALF, (1, 2)),
    (1, HALF, (1,)),
    (1, F(1, 7), (1,)),
])
def test_significant_times(T, eps, times):
    assert significant_times(T, eps) == times


def test_profit_classes():
    assert profit_class(F(4, 5), HALF, 4) == (1, F(2, 3))
    assert profit_class(F(1), HALF, 4) == (0, 1)
    assert profit_class(F(1, 10), HALF, 4) == (None, F(1, 10))


def test_flattened_capacities_fourteen():
    assert flattened_capacities(list(range(1, 15)), HALF) == \
        (0, 0, 3, 3, 3, 3, 7, 7, 9, 9, 11, 12, 13, 14)


def test_well_behave_single_time():
    inst = IikInstance([1, F(3, 4)], [1, 1], [5])
    wb, _ = well_behave(inst, HALF)
    assert wb.capacities == (5,)


def test_well_behave_profits():
    inst = IikInstance([1, F(4, 5), F(1, 10)], [1, 1, 1], [1, 2, 3, 4])
    wb, _ = well_behave(inst, HALF)
    assert wb.profits == (1, F(2, 3), F(1, 10))
    assert is_well_behaved(wb, HALF)
    assert not is_well_behaved(inst, HALF)


def test_lift_keeps_feasibility():
    inst = IikInstance([1, F(4, 5), F(1, 3)], [2, 1, 1], [1, 2, 3, 4])
    wb, m = well_behave(inst, HALF)
    s = Schedule((3, 3, 4))
    assert check_feasible(wb, s)
    assert check_feasible(inst, lift_solution(m, s))


def test_c_eps_values():
    assert [c_eps(F(1, 2)), c_eps(F(1, 4)), c_eps(F(1, 16))] == [2, 7, 46]


def test_logs_are_exact():
    base = F(5, 4)
    assert ceil_log(base, F(4)) == 7
    assert floor_log(base, F(4)) == 6
    assert ceil_log(base, base ** 3) == floor_log(base, base ** 3) == 3


def test_eps_out_of_range():
    with pytest.raises(ValueError):
        significant_times(3, F(3, 2))
