"""Tests for the probregex command-line surface."""

import json
import logging
import re

import pytest
from typer.testing import CliRunner

from probregex.cli import cli_app
from probregex.equiv import Equal, expr_equiv
from probregex.gpts_io import load
from probregex.parser import parse

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_package_logger():
    """Drop handlers bound to the runner's streams once each test is done."""
    logger = logging.getLogger("probregex")
    saved_handlers, saved_level = logger.handlers[:], logger.level
    yield
    logger.handlers[:] = saved_handlers
    logger.setLevel(saved_level)


def _clean(text: str) -> str:
    # Typer may add ANSI color codes; strip them for stable assertions.
    return re.sub(r"\x1b\[[0-9;]*[mK]", "", text)


def test_no_arguments_shows_help():
    """Verify that running without arguments prints the command list."""
    result = runner.invoke(cli_app, [])
    assert "eval" in _clean(result.output)


# --- eval ---


@pytest.mark.parametrize(
    ("expr", "word", "expected"),
    [
        ("a;a^[1/4]", "aaa", "3/64"),
        ("1", "", "1"),
        ("a^[1/2];(b+[1/2]1)", "", "1/4"),
        ("a", "b", "0"),
    ],
)
def test_eval(expr, word, expected):
    """Verify that eval prints the exact probability of the word."""
    result = runner.invoke(cli_app, ["eval", expr, word])
    assert result.exit_code == 0
    assert result.stdout.strip() == expected


def test_eval_defaults_to_the_empty_word():
    """Verify that eval without a word evaluates the empty word."""
    result = runner.invoke(cli_app, ["eval", "1 +[1/3] a"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "1/3"


def test_eval_with_approximation():
    """Verify that --approx appends a rounded decimal."""
    result = runner.invoke(cli_app, ["eval", "a;a^[1/4]", "aaa", "--approx", "4"])
    assert result.stdout.strip() == "3/64 ~= 0.0469"


def test_eval_word_table():
    """Verify that --upto prints every word up to the given length."""
    result = runner.invoke(cli_app, ["eval", "a;a^[1/4]", "--upto", "2"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ['"": 0', '"a": 3/4', '"aa": 3/16']


def test_eval_parse_error():
    """Verify that a malformed expression exits with code 2."""
    result = runner.invoke(cli_app, ["eval", "a ; #", "a"])
    assert result.exit_code == 2


def test_eval_letter_outside_declared_alphabet():
    """Verify that a word letter outside --alphabet exits with code 3."""
    result = runner.invoke(cli_app, ["eval", "a", "c", "--alphabet", "ab"])
    assert result.exit_code == 3


def test_eval_invalid_word_letter():
    """Verify that a non a-z word letter exits with code 3."""
    result = runner.invoke(cli_app, ["eval", "a", "A"])
    assert result.exit_code == 3


# --- equiv ---


@pytest.mark.parametrize(
    ("left", "right"),
    [
        ("a;a^[1/4]", "a+[3/4](a;a^[1/4];a)"),
        ("1^[1]", "0"),
        ("(a +[1/2] 1)^[1/2] ; 1", "a^[1/3]"),
    ],
)
def test_equiv_equal(left, right):
    """Verify that equivalent expressions print EQUAL and exit 0."""
    result = runner.invoke(cli_app, ["equiv", left, right])
    assert result.exit_code == 0
    assert result.stdout.strip() == "EQUAL"


def test_equiv_differ():
    """Verify that different expressions print the shortest distinguishing word and exit 1."""
    result = runner.invoke(cli_app, ["equiv", "a", "a+[1/2]b"])
    assert result.exit_code == 1
    assert result.stdout.strip() == 'DIFFER at "a": 1 vs 1/2'


# --- derive ---


def test_derive_one_writes_single_state(tmp_path):
    """Verify that deriving 1 writes a one-state automaton."""
    out = tmp_path / "one.json"
    result = runner.invoke(cli_app, ["derive", "1", "--out", str(out)])
    assert result.exit_code == 0
    g = load(out)
    assert g.states == ("1",)


def test_derive_respects_size_bound(tmp_path):
    """Verify that the derivative automaton stays within the size bound."""
    out = tmp_path / "loop.json"
    result = runner.invoke(cli_app, ["derive", "a;a^[1/4]", "-o", str(out)])
    assert result.exit_code == 0
    assert len(load(out).states) <= 5


def test_derive_to_stdout():
    """Verify that derive without --out prints canonical JSON."""
    result = runner.invoke(cli_app, ["derive", "a"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["states"] == ["a", "1"]
    assert document["start"] == ["a"]


def test_derive_dot():
    """Verify that --format dot prints a graphviz digraph."""
    result = runner.invoke(cli_app, ["derive", "a", "--format", "dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph")


# --- solve ---


def test_solve_worked_example(fixtures_dir):
    """Verify that the solved expression is language-equal to the expected one."""
    result = runner.invoke(cli_app, ["solve", str(fixtures_dir / "ex2-left.json"), "q0"])
    assert result.exit_code == 0
    solved = parse(result.stdout.strip())
    assert isinstance(expr_equiv(solved, parse("a;a^[1/4]")), Equal)
    check = runner.invoke(cli_app, ["equiv", result.stdout.strip(), "a;a^[1/4]"])
    assert check.stdout.strip() == "EQUAL"


def test_solve_accepting_state(fixtures_dir):
    """Verify that an accepting state solves to an expression accepting the empty word."""
    result = runner.invoke(cli_app, ["solve", str(fixtures_dir / "accept.json"), "s"])
    assert result.exit_code == 0
    value = runner.invoke(cli_app, ["eval", result.stdout.strip(), ""])
    assert value.stdout.strip() == "1"


def test_solve_self_check(fixtures_dir):
    """Verify that --self-check reports a successful round trip."""
    result = runner.invoke(cli_app, ["solve", str(fixtures_dir / "ex3.json"), "q3", "--self-check"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "ROUNDTRIP OK"


def test_solve_unknown_state(fixtures_dir):
    """Verify that an unknown state exits with code 3."""
    result = runner.invoke(cli_app, ["solve", str(fixtures_dir / "accept.json"), "t"])
    assert result.exit_code == 3


def test_solve_invalid_file(tmp_path):
    """Verify that a file with an out-of-range probability exits with code 2."""
    path = tmp_path / "bad.json"
    path.write_text('{"alphabet": [], "states": ["s"], "transitions": [{"from": "s", "prob": "7/4"}]}')
    result = runner.invoke(cli_app, ["solve", str(path), "s"])
    assert result.exit_code == 2


def test_solve_missing_file(tmp_path):
    """Verify that a missing file exits with code 2."""
    result = runner.invoke(cli_app, ["solve", str(tmp_path / "missing.json"), "s"])
    assert result.exit_code == 2


# --- bisim ---


def test_bisim_blocks(fixtures_dir):
    """Verify that bisim prints one sorted block per line."""
    result = runner.invoke(cli_app, ["bisim", str(fixtures_dir / "ex3.json")])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["q0", "q1", "q2 q5", "q3", "q4"]


def test_bisim_cross_check(fixtures_dir):
    """Verify that --cross-check lists language-equal states that are not bisimilar."""
    result = runner.invoke(cli_app, ["bisim", str(fixtures_dir / "ex3.json"), "--cross-check"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "LANG-EQUAL BUT NOT BISIMILAR: (q0,q3)"


# --- axioms-check ---


def test_axioms_check_small_run():
    """Verify that a small axioms-check run reports every instance passed."""
    result = runner.invoke(cli_app, ["axioms-check", "--trials", "2", "--depth", "2", "--schema", "Unroll"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["Unroll: 2/2 passed"]


def test_axioms_check_unknown_schema():
    """Verify that an unknown schema name exits with code 2."""
    result = runner.invoke(cli_app, ["axioms-check", "--trials", "1", "--schema", "Nope"])
    assert result.exit_code == 2


def test_log_level_option_reaches_commands():
    """Verify that the global --log-level option does not disturb command output."""
    result = runner.invoke(cli_app, ["--log-level", "DEBUG", "eval", "1"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "1"


def test_consecutive_commands_in_one_process():
    """Verify that a second command in the same process still runs after the first runner closed its streams."""
    first = runner.invoke(cli_app, ["eval", "a;a^[1/4]", "aaa"])
    second = runner.invoke(cli_app, ["eval", "a;a^[1/4]", "aaa"])
    assert (first.exit_code, first.stdout.strip()) == (0, "3/64")
    assert (second.exit_code, second.stdout.strip()) == (0, "3/64")
