"""Semantic soundness harness for the axiom schemas.

Every schema is instantiated with random subexpressions and probabilities and
both sides are compared with the exact equivalence decider. The fixpoint rule
is exercised through the solver: the solution of the one-unknown system
``g == e;g +[p] f`` must be equivalent to ``e^[p];f``.
"""

import logging
import random
from collections.abc import Iterable
from fractions import Fraction

from probregex.axioms import SCHEMAS, AxiomSchema, Binding, get_schema, instantiate_axiom
from probregex.config import config
from probregex.equiv import Distinguished, expr_equiv
from probregex.errors import SideConditionError, UndefinedInstanceError
from probregex.expr import ONE_PROB, Expr, Seq, Star
from probregex.generators import DEFAULT_ALPHABET, random_expr, random_prob, random_productive_expr
from probregex.models import AxiomsReport, SchemaResult
from probregex.parser import render
from probregex.solver import LeftAffineSystem, solve

logger = logging.getLogger(__name__)

# Rejected draws allowed per requested instance before a schema gives up
_MAX_DRAWS_PER_TRIAL = 20


def random_bindings(
    schema: AxiomSchema,
    rng: random.Random,
    depth: int = config.axioms_max_depth,
    max_denominator: int = config.axioms_max_denominator,
) -> dict[str, Binding]:
    bindings: dict[str, Binding] = {}
    for name in schema.expr_vars:
        if name == schema.productive_var:
            bindings[name] = random_productive_expr(rng, depth, DEFAULT_ALPHABET, max_denominator)
        else:
            bindings[name] = random_expr(rng, depth, DEFAULT_ALPHABET, max_denominator)
    for name in schema.prob_vars:
        bindings[name] = random_prob(rng, max_denominator)
    return bindings


def solve_fixpoint(e: Expr, p: Fraction, f: Expr) -> Expr:
    """Solution of the one-unknown system ``g == e;g +[p] f``."""
    system = LeftAffineSystem(
        unknowns=("g",),
        m={("g", "g"): e},
        p={("g", "g"): p},
        b={"g": f},
        r={"g": ONE_PROB - p},
    )
    return solve(system)["g"]


def _instances(schema: AxiomSchema, bindings: dict[str, Binding]) -> list[tuple[Expr, Expr]]:
    pairs = [instantiate_axiom(schema, bindings)]
    if schema.name == "Unique":
        e, f, p = bindings["e"], bindings["f"], bindings["p"]
        pairs.append((solve_fixpoint(e, p, f), Seq(Star(e, p), f)))  # type: ignore[arg-type]
    return pairs


def check_schema(
    schema: AxiomSchema,
    trials: int,
    rng: random.Random,
    depth: int = config.axioms_max_depth,
    max_denominator: int = config.axioms_max_denominator,
) -> SchemaResult:
    """Check ``trials`` well-formed random instances of ``schema``."""
    result = SchemaResult(name=schema.name)
    draws = 0
    while result.passed + result.failed < trials and draws < trials * _MAX_DRAWS_PER_TRIAL:
        draws += 1
        bindings = random_bindings(schema, rng, depth, max_denominator)
        try:
            pairs = _instances(schema, bindings)
        except (UndefinedInstanceError, SideConditionError) as e:
            logger.debug(f"Skipping {schema.name} draw: {e}")
            result.skipped += 1
            continue
        failure = None
        for lhs, rhs in pairs:
            verdict = expr_equiv(lhs, rhs)
            if isinstance(verdict, Distinguished):
                failure = (
                    f"{render(lhs)} vs {render(rhs)}: "
                    f'differ at "{verdict.word}": {verdict.left_value} vs {verdict.right_value}'
                )
                break
        if failure is None:
            result.passed += 1
        else:
            logger.warning(f"{schema.name} failed: {failure}")
            result.failed += 1
            result.failures.append(failure)
    return result


def run_axioms_check(
    seed: int = config.axioms_seed,
    trials: int = config.axioms_trials,
    depth: int = config.axioms_max_depth,
    max_denominator: int = config.axioms_max_denominator,
    schemas: Iterable[str] | None = None,
) -> AxiomsReport:
    """Check every schema (or the named ones) with a generator seeded by ``seed``."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    report = AxiomsReport(seed=seed, trials=trials)
    for name in schemas if schemas is not None else SCHEMAS:
        result = check_schema(get_schema(name), trials, rng, depth, max_denominator)
        logger.info(f"{name}: {result.passed} passed, {result.failed} failed, {result.skipped} skipped")
        report.results.append(result)
    return report
