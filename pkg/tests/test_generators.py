"""Tests for probregex.generators."""

import random

from probregex.expr import letters, termination_weight
from probregex.generators import random_expr, random_gpts, random_prob, random_productive_expr
from probregex.gpts import validate


def _depth(e) -> int:
    children = [value for value in vars(e).values() if hasattr(value, "__dataclass_fields__")]
    return 1 + max((_depth(child) for child in children), default=0)


def test_same_seed_gives_same_expressions():
    first = [random_expr(random.Random(7)) for _ in range(5)]
    second = [random_expr(random.Random(7)) for _ in range(5)]
    assert first == second


def test_random_prob_respects_denominator_bound():
    rng = random.Random(3)
    for _ in range(200):
        p = random_prob(rng, max_denominator=12)
        assert 0 <= p <= 1
        assert p.denominator <= 12


def test_random_expr_respects_depth_and_alphabet():
    rng = random.Random(11)
    for _ in range(200):
        e = random_expr(rng, depth=3, alphabet=("a", "b"))
        assert _depth(e) <= 4
        assert letters(e) <= {"a", "b"}


def test_random_productive_expr_cannot_terminate_immediately():
    rng = random.Random(5)
    for _ in range(200):
        assert termination_weight(random_productive_expr(rng)) == 0


def test_random_gpts_is_valid():
    rng = random.Random(13)
    for _ in range(100):
        g = random_gpts(rng, max_states=5)
        assert validate(g) == []
        assert 1 <= len(g.states) <= 5
        assert g.start == ("q0",)
