"""Hypothesis strategies for expressions, probabilities and transition systems."""

from fractions import Fraction

from hypothesis import strategies as st

from probregex.distributions import TERM, Output, Step
from probregex.expr import ONE, ZERO, Act, Choice, Seq, Star
from probregex.gpts import Gpts

ALPHABET = ("a", "b")

probs = st.fractions(min_value=0, max_value=1, max_denominator=12)
letters = st.sampled_from(ALPHABET)

leaves = st.one_of(st.just(ZERO), st.just(ONE), letters.map(Act))


def _compose(children):
    return st.one_of(
        st.builds(Choice, children, probs, children),
        st.builds(Seq, children, children),
        st.builds(Star, children, probs),
    )


exprs = st.recursive(leaves, _compose, max_leaves=8)

# Expressions with termination weight 0
productive_exprs = st.recursive(
    st.one_of(st.just(ZERO), letters.map(Act)),
    lambda children: st.one_of(
        st.builds(Choice, children, probs, children),
        st.builds(Seq, children, exprs),
        st.builds(Seq, exprs, children),
    ),
    max_leaves=6,
)


@st.composite
def gpts(draw, max_states: int = 4, alphabet: tuple[str, ...] = ALPHABET) -> Gpts:
    """Valid transition system over ``q0, q1, ...`` with start state ``q0``."""
    count = draw(st.integers(min_value=1, max_value=max_states))
    states = tuple(f"q{i}" for i in range(count))
    outputs: list[Output] = [TERM] + [Step(a, s) for a in alphabet for s in states]
    trans: dict[str, dict[Output, Fraction]] = {}
    for state in states:
        chosen = draw(st.lists(st.sampled_from(outputs), unique=True, max_size=4))
        weights = draw(st.lists(st.integers(min_value=1, max_value=6), min_size=len(chosen), max_size=len(chosen)))
        total = sum(weights) + draw(st.integers(min_value=0, max_value=3))
        trans[state] = {output: Fraction(w, total) for output, w in zip(chosen, weights, strict=True)}
    return Gpts(states=states, alphabet=alphabet, trans=trans, start=(states[0],))
