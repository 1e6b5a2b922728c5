"""Axiom schemas of probabilistic regular expressions as instantiable templates.

Each schema turns an assignment of expressions to ``e, f, g, h`` and
probabilities to ``p, q`` into a pair ``(lhs, rhs)`` of expressions that denote
the same probabilistic language. Schemas whose probabilities involve a
division are undefined when the denominator vanishes.
"""

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from probregex.errors import AxiomInstantiationError, SideConditionError, UndefinedInstanceError
from probregex.expr import ONE, ONE_PROB, ZERO, ZERO_PROB, Choice, Expr, Seq, Star, as_prob, complement, termination_weight

logger = logging.getLogger(__name__)

Binding = Expr | Fraction
Instance = tuple[Expr, Expr]


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    expr_vars: tuple[str, ...]
    prob_vars: tuple[str, ...]
    template: Callable[..., Instance]
    description: str
    # Metavariable whose termination weight must be 0
    productive_var: str | None = None

    @property
    def metavariables(self) -> tuple[str, ...]:
        return self.expr_vars + self.prob_vars


def _ratio(numerator: Fraction, denominator: Fraction, schema: str) -> Fraction:
    if denominator == ZERO_PROB:
        raise UndefinedInstanceError(f"{schema} is undefined: denominator {denominator} is zero")
    return numerator / denominator


def _c1(e: Expr, p: Fraction) -> Instance:
    return e, Choice(e, p, e)


def _c2(e: Expr, f: Expr) -> Instance:
    return e, Choice(e, ONE_PROB, f)


def _c3(e: Expr, f: Expr, p: Fraction) -> Instance:
    return Choice(e, p, f), Choice(f, complement(p), e)


def _c4(e: Expr, f: Expr, g: Expr, p: Fraction, q: Fraction) -> Instance:
    inner = _ratio(complement(p) * q, ONE_PROB - p * q, "C4")
    return Choice(Choice(e, p, f), q, g), Choice(e, p * q, Choice(f, inner, g))


def _d1(e: Expr, f: Expr, g: Expr, p: Fraction) -> Instance:
    return Seq(Choice(e, p, f), g), Choice(Seq(e, g), p, Seq(f, g))


def _d2(e: Expr, f: Expr, g: Expr, p: Fraction) -> Instance:
    return Seq(e, Choice(f, p, g)), Choice(Seq(e, f), p, Seq(e, g))


def _zero_seq(e: Expr) -> Instance:
    return Seq(ZERO, e), ZERO


def _seq_zero(e: Expr) -> Instance:
    return Seq(e, ZERO), ZERO


def _one_seq(e: Expr) -> Instance:
    return Seq(ONE, e), e


def _seq_one(e: Expr) -> Instance:
    return Seq(e, ONE), e


def _seq_assoc(e: Expr, f: Expr, g: Expr) -> Instance:
    return Seq(e, Seq(f, g)), Seq(Seq(e, f), g)


def _unroll(e: Expr, p: Fraction) -> Instance:
    return Choice(Seq(e, Star(e, p)), p, ONE), Star(e, p)


def _tight(e: Expr, p: Fraction, q: Fraction) -> Instance:
    tightened = _ratio(p * q, ONE_PROB - complement(p) * q, "Tight")
    return Seq(Star(Choice(e, p, ONE), q), ONE), Star(e, tightened)


def _div() -> Instance:
    return Star(ONE, ONE_PROB), ZERO


def _unroll_right(e: Expr, p: Fraction) -> Instance:
    return Choice(Seq(Star(e, p), e), p, ONE), Star(e, p)


def _choice_assoc(e: Expr, f: Expr, g: Expr, p: Fraction, q: Fraction) -> Instance:
    outer = ONE_PROB - complement(p) * complement(q)
    inner = _ratio(p, outer, "Assoc")
    return Choice(e, p, Choice(f, q, g)), Choice(Choice(e, inner, f), outer, g)


def _interchange(e: Expr, f: Expr, g: Expr, h: Expr, p: Fraction, q: Fraction) -> Instance:
    return Choice(Choice(e, p, f), q, Choice(g, p, h)), Choice(Choice(e, q, g), p, Choice(f, q, h))


def _unique(e: Expr, f: Expr, p: Fraction) -> Instance:
    solution = Seq(Star(e, p), f)
    return solution, Choice(Seq(e, solution), p, f)


SCHEMAS: dict[str, AxiomSchema] = {
    schema.name: schema
    for schema in (
        AxiomSchema("C1", ("e",), ("p",), _c1, "e == e +[p] e"),
        AxiomSchema("C2", ("e", "f"), (), _c2, "e == e +[1] f"),
        AxiomSchema("C3", ("e", "f"), ("p",), _c3, "e +[p] f == f +[1-p] e"),
        AxiomSchema("C4", ("e", "f", "g"), ("p", "q"), _c4, "(e +[p] f) +[q] g == e +[pq] (f +[(1-p)q/(1-pq)] g)"),
        AxiomSchema("D1", ("e", "f", "g"), ("p",), _d1, "(e +[p] f);g == e;g +[p] f;g"),
        AxiomSchema("D2", ("e", "f", "g"), ("p",), _d2, "e;(f +[p] g) == e;f +[p] e;g"),
        AxiomSchema("0S", ("e",), (), _zero_seq, "0;e == 0"),
        AxiomSchema("S0", ("e",), (), _seq_zero, "e;0 == 0"),
        AxiomSchema("1S", ("e",), (), _one_seq, "1;e == e"),
        AxiomSchema("S1", ("e",), (), _seq_one, "e;1 == e"),
        AxiomSchema("S", ("e", "f", "g"), (), _seq_assoc, "e;(f;g) == (e;f);g"),
        AxiomSchema("Unroll", ("e",), ("p",), _unroll, "e;e^[p] +[p] 1 == e^[p]"),
        AxiomSchema("Tight", ("e",), ("p", "q"), _tight, "(e +[p] 1)^[q];1 == e^[pq/(1-(1-p)q)]"),
        AxiomSchema("Div", (), (), _div, "1^[1] == 0"),
        AxiomSchema("UnrollRight", ("e",), ("p",), _unroll_right, "e^[p];e +[p] 1 == e^[p]", productive_var="e"),
        AxiomSchema("Assoc", ("e", "f", "g"), ("p", "q"), _choice_assoc, "e +[p] (f +[q] g) == (e +[p/l] f) +[l] g"),
        AxiomSchema(
            "Interchange",
            ("e", "f", "g", "h"),
            ("p", "q"),
            _interchange,
            "(e +[p] f) +[q] (g +[p] h) == (e +[q] g) +[p] (f +[q] h)",
        ),
        AxiomSchema("Unique", ("e", "f"), ("p",), _unique, "e^[p];f == e;(e^[p];f) +[p] f", productive_var="e"),
    )
}


def get_schema(name: str) -> AxiomSchema:
    try:
        return SCHEMAS[name]
    except KeyError:
        raise AxiomInstantiationError(f"Unknown axiom schema {name!r}") from None


def instantiate_axiom(schema: AxiomSchema | str, bindings: Mapping[str, Binding]) -> Instance:
    """Substitute ``bindings`` into ``schema`` and return its ``(lhs, rhs)`` pair.

    Raises:
        AxiomInstantiationError: If a metavariable is unbound or bound to the wrong kind of value.
        UndefinedInstanceError: If a divided probability has a zero denominator.
        SideConditionError: If the productive metavariable has a nonzero termination weight.
    """
    if isinstance(schema, str):
        schema = get_schema(schema)

    missing = [name for name in schema.metavariables if name not in bindings]
    if missing:
        raise AxiomInstantiationError(f"{schema.name} needs bindings for {', '.join(missing)}")

    arguments: dict[str, Binding] = {}
    for name in schema.expr_vars:
        value = bindings[name]
        if not isinstance(value, Expr):
            raise AxiomInstantiationError(f"{schema.name}: {name} must be an expression, got {value!r}")
        arguments[name] = value
    for name in schema.prob_vars:
        value = bindings[name]
        if isinstance(value, Expr):
            raise AxiomInstantiationError(f"{schema.name}: {name} must be a probability, got {value!r}")
        arguments[name] = as_prob(value)

    if schema.productive_var is not None:
        weight = termination_weight(arguments[schema.productive_var])  # type: ignore[arg-type]
        if weight != ZERO_PROB:
            raise SideConditionError(
                f"{schema.name} requires E({schema.productive_var}) = 0, got {weight}"
            )

    lhs, rhs = schema.template(**arguments)
    logger.debug(f"Instantiated {schema.name} with {sorted(arguments)}")
    return lhs, rhs
