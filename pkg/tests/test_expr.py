"""Tests for probregex.expr."""

from fractions import Fraction

import pytest

from probregex.errors import AlphabetError, ProbabilityRangeError, WeightSumError
from probregex.expr import (
    ONE,
    ZERO,
    Act,
    Choice,
    Seq,
    Star,
    as_prob,
    letters,
    nary_choice,
    size_bound,
    termination_weight,
)

a, b = Act("a"), Act("b")


def test_termination_weight_of_atoms():
    assert termination_weight(ONE) == 1
    assert termination_weight(ZERO) == 0
    assert termination_weight(a) == 0


def test_termination_weight_of_loop_followed_by_choice():
    e = Seq(Star(a, Fraction(1, 2)), Choice(b, Fraction(1, 2), ONE))
    assert termination_weight(e) == Fraction(1, 4)


def test_termination_weight_of_divergent_loop_is_zero():
    assert termination_weight(Star(ONE, Fraction(1))) == 0


def test_termination_weight_of_loop_renormalises_inner_exit():
    # (a +[1/2] 1)^[1/2]: exits with (1/2) / (1 - 1/2 * 1/2)
    e = Star(Choice(a, Fraction(1, 2), ONE), Fraction(1, 2))
    assert termination_weight(e) == Fraction(2, 3)


def test_nary_choice_of_nothing_is_zero():
    assert nary_choice([]) == ZERO


def test_nary_choice_returns_certain_term():
    assert nary_choice([(Fraction(1), a)]) == a
    assert nary_choice([(Fraction(0), b), (Fraction(1), a)]) == a


def test_nary_choice_pivots_on_first_term():
    folded = nary_choice([(Fraction(1, 4), a), (Fraction(1, 2), b)])
    assert folded == Choice(a, Fraction(1, 4), Choice(b, Fraction(2, 3), ZERO))


def test_nary_choice_drops_zero_weights():
    assert nary_choice([(Fraction(0), a), (Fraction(1, 2), b)]) == Choice(b, Fraction(1, 2), ZERO)


def test_nary_choice_rejects_weights_above_one():
    with pytest.raises(WeightSumError):
        nary_choice([(Fraction(3, 4), a), (Fraction(1, 2), b)])


def test_nary_choice_rejects_out_of_range_weight():
    with pytest.raises(ProbabilityRangeError):
        nary_choice([(Fraction(-1, 4), a)])


def test_size_bound():
    assert size_bound(a) == 2
    assert size_bound(ZERO) == 1
    assert size_bound(ONE) == 1
    assert size_bound(Seq(a, Star(a, Fraction(1, 4)))) == 5


def test_letters_collects_alphabet():
    e = Choice(a, Fraction(1, 3), Seq(Star(b, Fraction(1, 2)), ONE))
    assert letters(e) == frozenset({"a", "b"})
    assert letters(ONE) == frozenset()


def test_structural_equality_and_hashing():
    left = Choice(a, Fraction(1, 2), Star(b, Fraction(1, 3)))
    right = Choice(Act("a"), Fraction(2, 4), Star(Act("b"), Fraction(1, 3)))
    assert left == right
    assert hash(left) == hash(right)
    assert len({left, right}) == 1


def test_invalid_letters_are_rejected():
    with pytest.raises(AlphabetError):
        Act("A")
    with pytest.raises(AlphabetError):
        Act("ab")


def test_out_of_range_probabilities_are_rejected():
    with pytest.raises(ProbabilityRangeError):
        Choice(a, Fraction(5, 4), b)
    with pytest.raises(ProbabilityRangeError):
        Star(a, Fraction(-1, 2))


def test_as_prob_accepts_strings_and_integers():
    assert as_prob("1/4") == Fraction(1, 4)
    assert as_prob(1) == Fraction(1)
