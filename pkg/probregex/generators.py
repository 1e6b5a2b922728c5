"""Seeded random expressions, probabilities and transition systems."""

import random
from collections.abc import Sequence
from fractions import Fraction

from probregex.config import config
from probregex.distributions import TERM, Output, Step
from probregex.expr import ONE, ZERO, Act, Choice, Expr, Seq, Star
from probregex.gpts import Gpts

DEFAULT_ALPHABET = ("a", "b")


def random_prob(rng: random.Random, max_denominator: int = config.axioms_max_denominator) -> Fraction:
    denominator = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, denominator), denominator)


def _leaf(rng: random.Random, alphabet: Sequence[str]) -> Expr:
    roll = rng.random()
    if roll < 0.15:
        return ZERO
    if roll < 0.35:
        return ONE
    return Act(rng.choice(alphabet))


def random_expr(
    rng: random.Random,
    depth: int = config.axioms_max_depth,
    alphabet: Sequence[str] = DEFAULT_ALPHABET,
    max_denominator: int = config.axioms_max_denominator,
) -> Expr:
    """Random expression whose syntax tree is at most ``depth`` levels deep."""
    if depth <= 0 or rng.random() < 0.25:
        return _leaf(rng, alphabet)
    kind = rng.choice(("choice", "seq", "star"))
    if kind == "choice":
        return Choice(
            random_expr(rng, depth - 1, alphabet, max_denominator),
            random_prob(rng, max_denominator),
            random_expr(rng, depth - 1, alphabet, max_denominator),
        )
    if kind == "seq":
        return Seq(
            random_expr(rng, depth - 1, alphabet, max_denominator),
            random_expr(rng, depth - 1, alphabet, max_denominator),
        )
    return Star(random_expr(rng, depth - 1, alphabet, max_denominator), random_prob(rng, max_denominator))


def random_productive_expr(
    rng: random.Random,
    depth: int = config.axioms_max_depth,
    alphabet: Sequence[str] = DEFAULT_ALPHABET,
    max_denominator: int = config.axioms_max_denominator,
) -> Expr:
    """Random expression with termination weight 0."""
    if depth <= 0 or rng.random() < 0.25:
        return ZERO if rng.random() < 0.1 else Act(rng.choice(alphabet))
    kind = rng.choice(("choice", "seq-left", "seq-right"))
    if kind == "choice":
        return Choice(
            random_productive_expr(rng, depth - 1, alphabet, max_denominator),
            random_prob(rng, max_denominator),
            random_productive_expr(rng, depth - 1, alphabet, max_denominator),
        )
    if kind == "seq-left":
        return Seq(
            random_productive_expr(rng, depth - 1, alphabet, max_denominator),
            random_expr(rng, depth - 1, alphabet, max_denominator),
        )
    return Seq(
        random_expr(rng, depth - 1, alphabet, max_denominator),
        random_productive_expr(rng, depth - 1, alphabet, max_denominator),
    )


def random_gpts(
    rng: random.Random,
    max_states: int = config.random_gpts_max_states,
    alphabet: Sequence[str] = DEFAULT_ALPHABET,
    max_outputs: int = 4,
) -> Gpts:
    """Random valid transition system with states ``q0, q1, ...`` and start state ``q0``.

    Each state spreads integer weights over a few outputs plus an optional
    deadlock share, so masses are exact and at most 1.
    """
    states = tuple(f"q{i}" for i in range(rng.randint(1, max_states)))
    outputs: list[Output] = [TERM] + [Step(a, target) for a in alphabet for target in states]
    trans: dict[str, dict[Output, Fraction]] = {}
    for state in states:
        chosen = rng.sample(outputs, rng.randint(0, min(max_outputs, len(outputs))))
        weights = [rng.randint(1, 6) for _ in chosen]
        total = sum(weights) + rng.choice((0, 0, 1, 2, 3))
        trans[state] = {output: Fraction(w, total) for output, w in zip(chosen, weights, strict=True)}
    return Gpts(states=states, alphabet=tuple(alphabet), trans=trans, start=(states[0],))
