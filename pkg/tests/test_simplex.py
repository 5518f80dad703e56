from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualent.simplex import solve_lp, InfeasibleError, UnboundedError

F = Fraction


def test_simple_minimization():
    # min x + y  s.t.  x + y = 1, x,y >= 0
    res = solve_lp([F(1), F(1)], [[F(1), F(1)]], [F(1)], [], [])
    assert res.value == 1


def test_prefers_cheaper_variable():
    # min 2x + y  s.t.  x + y = 1  ->  all mass on y
    res = solve_lp([F(2), F(1)], [[F(1), F(1)]], [F(1)], [], [])
    assert res.value == 1
    assert res.x[0] == 0 and res.x[1] == 1


def test_upper_bounds_bind():
    # min -x - y  s.t.  x <= 2, y <= 3
    res = solve_lp(
        [F(-1), F(-1)],
        [],
        [],
        [[F(1), F(0)], [F(0), F(1)]],
        [F(2), F(3)],
    )
    assert res.value == -5
    assert res.x == (F(2), F(3))


def test_mixed_constraints_exact_value():
    # min x1 + 2 x2  s.t.  x1 + x2 = 1,  x1 - x2 <= 1/3
    res = solve_lp(
        [F(1), F(2)],
        [[F(1), F(1)]],
        [F(1)],
        [[F(1), F(-1)]],
        [F(1, 3)],
    )
    # optimum at x1 = 2/3, x2 = 1/3
    assert res.value == F(4, 3)
    assert res.x == (F(2, 3), F(1, 3))


def test_negative_rhs_is_normalized():
    # x - y = -2 with x,y >= 0 forces y >= 2
    res = solve_lp([F(0), F(1)], [[F(1), F(-1)]], [F(-2)], [], [])
    assert res.value == 2


def test_infeasible_detected():
    with pytest.raises(InfeasibleError):
        solve_lp(
            [F(1), F(1)],
            [[F(1), F(1)]],
            [F(1)],
            [[F(1), F(1)]],
            [F(1, 2) - F(1)],  # x + y <= -1/2 contradicts x + y = 1
        )


def test_unbounded_detected():
    with pytest.raises(UnboundedError):
        solve_lp([F(-1)], [], [], [], [])


def test_degenerate_instance_terminates():
    # Multiple redundant upper bounds at the optimum; Bland's rule must not
    # cycle.
    res = solve_lp(
        [F(1), F(1), F(1)],
        [[F(1), F(1), F(1)]],
        [F(1)],
        [[F(1), F(0), F(0)], [F(1), F(0), F(0)], [F(0), F(1), F(0)]],
        [F(0), F(0), F(0)],
    )
    assert res.value == 1
    assert res.x == (F(0), F(0), F(1))


def test_result_is_exact_rational():
    res = solve_lp(
        [F(1), F(3)],
        [[F(3), F(7)]],
        [F(1)],
        [],
        [],
    )
    assert isinstance(res.value, Fraction)
    assert all(isinstance(v, Fraction) for v in res.x)
    assert res.value == F(1, 3)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5), min_size=3, max_size=3),
    st.fractions(min_value=F(1, 2), max_value=4),
)
def test_probability_simplex_optimum_is_min_coefficient(costs, total):
    # min c.x over x >= 0 with sum x = total: optimum is total * min(c).
    res = solve_lp(
        [F(c) for c in costs],
        [[F(1), F(1), F(1)]],
        [F(total)],
        [],
        [],
    )
    assert res.value == total * min(F(c) for c in costs)
    assert sum(res.x) == total
