"""Tests for probregex.solver."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from probregex.deriv import reachable
from probregex.distributions import Step
from probregex.equiv import Distinguished, Equal, expr_equiv, lang_equiv
from probregex.errors import SystemInvariantError, UnknownStateError
from probregex.expr import ONE, ZERO, Act, Seq, Star
from probregex.gpts import Gpts, disjoint_union, word_prob, words_upto
from probregex.parser import parse
from probregex.solver import LeftAffineSystem, check_invariants, check_solution, gpts_to_expr, solve, system_of
from tests.strategies import exprs, gpts

a = Act("a")


def test_system_of_worked_example(ex2_left):
    s = system_of(ex2_left)
    assert s.weight("q0", "q1") == 1
    assert s.coefficient("q0", "q1") == a
    assert s.constant_weight("q0") == 0
    assert s.constant("q0") == ZERO
    assert s.weight("q1", "q1") == Fraction(1, 4)
    assert s.constant_weight("q1") == Fraction(3, 4)
    assert s.constant("q1") == ONE
    assert check_invariants(s) == []


def test_system_of_accepting_state(accept):
    s = system_of(accept)
    assert s.constant_weight("s") == 1
    assert s.constant("s") == ONE
    assert s.weight("s", "s") == 0


def test_system_of_deadlock_state():
    s = system_of(Gpts(states=("d",), alphabet=("a",), trans={}))
    assert s.constant_weight("d") == 1
    assert s.constant("d") == ZERO


def test_system_of_partial_termination_scales_constant(ex4):
    s = system_of(ex4)
    # q0 terminates with 1/4 out of the 1/4 left after its moves
    assert s.constant_weight("q0") == Fraction(1, 4)
    assert s.constant("q0") == ONE


def test_solve_worked_example(ex2_left):
    solution = solve(system_of(ex2_left))
    assert isinstance(expr_equiv(solution["q1"], parse("a^[1/4]")), Equal)
    assert isinstance(expr_equiv(solution["q0"], parse("a;a^[1/4]")), Equal)


def test_solve_single_unknown_without_loop():
    s = LeftAffineSystem(unknowns=("x",), b={"x": ONE}, r={"x": Fraction(1)})
    solution = solve(s)
    assert solution["x"] == Seq(Star(ZERO, Fraction(0)), ONE)
    g = reachable(solution["x"])
    assert word_prob(g, g.start[0], "") == 1


def test_solve_single_unknown_that_never_exits():
    s = LeftAffineSystem(unknowns=("x",), m={("x", "x"): a}, p={("x", "x"): Fraction(1)})
    solution = solve(s)
    assert solution["x"] == Seq(Star(a, Fraction(1)), ZERO)
    source = Gpts(states=("x",), alphabet=("a",), trans={"x": {Step("a", "x"): Fraction(1)}})
    g = reachable(solution["x"], alphabet="a")
    for word in words_upto(("a",), 4):
        assert word_prob(g, g.start[0], word) == word_prob(source, "x", word) == 0


def test_solve_with_lossy_self_loop_keeps_rows_stochastic():
    # y loops forever on a, so the mass x sends to y can never terminate
    s = LeftAffineSystem(
        unknowns=("x", "y"),
        m={("x", "y"): a, ("y", "y"): a},
        p={("x", "y"): Fraction(1, 2), ("y", "y"): Fraction(1)},
        b={"x": ONE},
        r={"x": Fraction(1, 2)},
    )
    solution = solve(s)
    g = reachable(solution["x"], alphabet="a")
    assert word_prob(g, g.start[0], "") == Fraction(1, 2)
    assert all(word_prob(g, g.start[0], "a" * n) == 0 for n in range(1, 5))


def test_gpts_to_expr_of_worked_example(ex2):
    e = gpts_to_expr(ex2, "q0")
    assert isinstance(expr_equiv(e, parse("a;a^[1/4]")), Equal)
    assert isinstance(expr_equiv(gpts_to_expr(ex2, "q2"), e), Equal)


def test_gpts_to_expr_of_accepting_state(accept):
    e = gpts_to_expr(accept, "s")
    g = reachable(e, alphabet="a")
    assert word_prob(g, g.start[0], "") == 1
    assert word_prob(g, g.start[0], "a") == 0


def test_gpts_to_expr_unknown_state(accept):
    with pytest.raises(UnknownStateError):
        gpts_to_expr(accept, "t")


def test_row_sum_violation_is_rejected():
    s = LeftAffineSystem(unknowns=("x",), b={"x": ONE}, r={"x": Fraction(1, 2)})
    assert check_invariants(s) == ["row x sums to 1/2, expected 1"]
    with pytest.raises(SystemInvariantError):
        solve(s)


def test_terminating_coefficient_is_rejected():
    s = LeftAffineSystem(unknowns=("x",), m={("x", "x"): ONE}, p={("x", "x"): Fraction(1)})
    with pytest.raises(SystemInvariantError, match="can terminate immediately"):
        solve(s)


def test_bad_elimination_order_is_rejected(ex2_left):
    with pytest.raises(ValueError, match="not a permutation"):
        solve(system_of(ex2_left), order=["q0"])


def test_solutions_satisfy_their_equations(ex3):
    verdicts = check_solution(ex3, solve(system_of(ex3)))
    assert all(isinstance(v, Equal) for v in verdicts.values())


def test_wrong_solution_is_detected(ex2_left):
    solution = solve(system_of(ex2_left))
    broken = dict(solution, q1=parse("a^[1/2]"))
    assert isinstance(check_solution(ex2_left, broken)["q1"], Distinguished)


def _round_trips(g: Gpts, state: str, e) -> bool:
    union = disjoint_union(reachable(e), g)
    return isinstance(lang_equiv(union, union.start[0], "R." + state), Equal)


@settings(max_examples=30)
@given(gpts(max_states=3))
def test_solved_expressions_generate_the_state_language(g):
    solution = solve(system_of(g))
    for state in g.states:
        assert _round_trips(g, state, solution[state])


@settings(max_examples=20)
@given(gpts(max_states=3))
def test_elimination_order_does_not_change_the_language(g):
    s = system_of(g)
    forward, backward = solve(s), solve(s, order=tuple(reversed(s.unknowns)))
    for state in g.states:
        assert isinstance(expr_equiv(forward[state], backward[state]), Equal)


@settings(max_examples=25)
@given(exprs)
def test_solving_the_derivative_automaton_recovers_the_language(e):
    g = reachable(e)
    assert isinstance(expr_equiv(gpts_to_expr(g, g.start[0]), e), Equal)
