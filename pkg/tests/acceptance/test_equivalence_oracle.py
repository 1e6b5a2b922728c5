"""The equivalence decider agrees with exhaustive word enumeration."""

import random

import pytest

from probregex.equiv import Distinguished, lang_equiv
from probregex.generators import random_gpts
from probregex.gpts import disjoint_union, word_prob, word_table

pytestmark = pytest.mark.acceptance

PAIRS = 200


def test_verdicts_match_enumeration():
    rng = random.Random(99)
    for _ in range(PAIRS):
        g = disjoint_union(random_gpts(rng, max_states=4), random_gpts(rng, max_states=4))
        x, y = g.start
        verdict = lang_equiv(g, x, y)
        # Two languages over n states that agree on words shorter than n agree everywhere
        bound = len(g.states) - 1
        agree = word_table(g, x, bound) == word_table(g, y, bound)
        if isinstance(verdict, Distinguished):
            assert not agree
            assert word_prob(g, x, verdict.word) == verdict.left_value
            assert word_prob(g, y, verdict.word) == verdict.right_value
        else:
            assert agree
