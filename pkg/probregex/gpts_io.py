"""Reading and writing transition systems as JSON documents, plus DOT export."""

import json
import logging
from fractions import Fraction
from pathlib import Path

import graphviz
from pydantic import ValidationError

from probregex.constants import TERMINATION_SYMBOL
from probregex.distributions import TERM, Output, Step
from probregex.errors import GptsSchemaError
from probregex.expr import ONE_PROB, ZERO_PROB
from probregex.gpts import Gpts, require_valid
from probregex.models import GptsDocument, TransitionRecord
from probregex.parser import parse_prob, render_prob

logger = logging.getLogger(__name__)


def _pointer(location: tuple) -> str:
    return "/" + "/".join(str(part) for part in location)


def from_document(document: GptsDocument) -> Gpts:
    """Build a Gpts from a schema-valid document, checking cross references.

    Raises:
        GptsSchemaError: On an undeclared state, a letter outside the alphabet,
            a repeated transition or a state whose mass exceeds 1.
    """
    declared = {state: i for i, state in enumerate(document.states)}
    if len(declared) != len(document.states):
        raise GptsSchemaError("duplicate state identifiers", "/states")
    for i, state in enumerate(document.start):
        if state not in declared:
            raise GptsSchemaError(f"start state {state!r} is not declared", f"/start/{i}")

    trans: dict[str, dict[Output, Fraction]] = {state: {} for state in document.states}
    for i, record in enumerate(document.transitions):
        if record.from_state not in declared:
            raise GptsSchemaError(f"state {record.from_state!r} is not declared", f"/transitions/{i}/from")
        if record.is_termination:
            output: Output = TERM
        else:
            if record.label not in document.alphabet:
                raise GptsSchemaError(f"letter {record.label!r} is not in the alphabet", f"/transitions/{i}/label")
            if record.to_state not in declared:
                raise GptsSchemaError(f"state {record.to_state!r} is not declared", f"/transitions/{i}/to")
            output = Step(record.label, record.to_state)
        row = trans[record.from_state]
        if output in row:
            raise GptsSchemaError("repeated transition", f"/transitions/{i}")
        prob = parse_prob(record.prob)
        if prob != ZERO_PROB:
            row[output] = prob

    for state, row in trans.items():
        mass = sum(row.values(), ZERO_PROB)
        if mass > ONE_PROB:
            raise GptsSchemaError(f"mass {mass} > 1 at state {state}", f"/states/{declared[state]}")

    return Gpts(
        states=tuple(document.states),
        alphabet=tuple(document.alphabet),
        trans=trans,
        start=tuple(document.start),
    )


def loads(text: str) -> Gpts:
    """Parse a JSON document into a validated Gpts.

    Raises:
        GptsSchemaError: With a JSON pointer to the first offending value.
    """
    try:
        document = GptsDocument.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        raise GptsSchemaError(first["msg"], _pointer(first["loc"])) from e
    g = from_document(document)
    logger.debug(f"Loaded transition system with {len(g.states)} states")
    return g


def load(path: str | Path) -> Gpts:
    return loads(Path(path).read_text(encoding="utf-8"))


def _transition_order(g: Gpts):
    def key(item: tuple[Output, Fraction]) -> tuple:
        output, _ = item
        if output is TERM:
            return (0, "", 0)
        return (1, output.letter, g.index_of(output.target))

    return key


def to_document(g: Gpts) -> GptsDocument:
    require_valid(g)
    records: list[TransitionRecord] = []
    order = _transition_order(g)
    for state in g.states:
        for output, weight in sorted(g.trans.get(state, {}).items(), key=order):
            if weight == ZERO_PROB:
                continue
            if isinstance(output, Step):
                label, target = output.letter, output.target
            else:
                label, target = None, None
            records.append(TransitionRecord(from_state=state, label=label, prob=render_prob(weight), to_state=target))
    return GptsDocument(alphabet=list(g.alphabet), states=list(g.states), start=list(g.start), transitions=records)


def dumps(g: Gpts) -> str:
    """Canonical JSON text of ``g``: fixed key order, sorted transitions, trailing newline."""
    document = to_document(g)
    payload = {
        "alphabet": document.alphabet,
        "states": document.states,
        "start": document.start,
        "transitions": [
            {"from": t.from_state, "label": t.label, "prob": t.prob, "to": t.to_state} for t in document.transitions
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def save(g: Gpts, path: str | Path) -> None:
    Path(path).write_text(dumps(g), encoding="utf-8")


def to_dot(g: Gpts, name: str = "gpts") -> str:
    """DOT source for ``g``; termination is drawn as a double edge into a ✓ node."""
    dot = graphviz.Digraph(name=name)
    dot.attr(rankdir="LR")
    for state in g.states:
        dot.node(state, shape="doublecircle" if state in g.start else "circle")
    for state in g.states:
        for output, weight in sorted(g.trans.get(state, {}).items(), key=_transition_order(g)):
            if isinstance(output, Step):
                dot.edge(state, output.target, label=f"{output.letter} | {render_prob(weight)}")
            else:
                sink = f"{state}/{TERMINATION_SYMBOL}"
                dot.node(sink, label=TERMINATION_SYMBOL, shape="plaintext")
                dot.edge(state, sink, label=render_prob(weight), color="black:black")
    return dot.source
