# tests/conftest.py
from pathlib import Path

import pytest
from hypothesis import settings

from probregex.gpts import Gpts
from probregex.gpts_io import load

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "docs" / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the transcribed example automata."""
    return FIXTURES_DIR


@pytest.fixture
def ex2() -> Gpts:
    """Five-state automaton whose q0 and q2 generate the same language."""
    return load(FIXTURES_DIR / "ex2.json")


@pytest.fixture
def ex2_left() -> Gpts:
    return load(FIXTURES_DIR / "ex2-left.json")


@pytest.fixture
def ex3() -> Gpts:
    """Six states; q0 and q3 are language equivalent but not bisimilar."""
    return load(FIXTURES_DIR / "ex3.json")


@pytest.fixture
def ex4() -> Gpts:
    return load(FIXTURES_DIR / "ex4.json")


@pytest.fixture
def accept() -> Gpts:
    """Single state that terminates with probability 1."""
    return load(FIXTURES_DIR / "accept.json")


# Exact arithmetic on nested loops varies widely in cost per example
settings.register_profile("probregex", deadline=None)
settings.load_profile("probregex")
