"""Every axiom schema holds on a full-size batch of random instances."""

import random

import pytest

from probregex.axioms import SCHEMAS, get_schema
from probregex.axioms_check import check_schema

pytestmark = pytest.mark.acceptance

TRIALS = 200


@pytest.mark.parametrize("name", list(SCHEMAS))
def test_schema_is_sound(name):
    result = check_schema(get_schema(name), TRIALS, random.Random(name), depth=4, max_denominator=12)
    assert result.failures == []
    assert result.passed == TRIALS
