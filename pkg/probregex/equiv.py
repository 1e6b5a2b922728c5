"""Deciding language equivalence and probabilistic bisimilarity of states."""

import logging
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from probregex.deriv import reachable
from probregex.distributions import TERM, Step
from probregex.expr import ZERO_PROB, Expr
from probregex.gpts import Gpts, Vector, accept_vector, disjoint_union, letter_rows, require_valid, word_prob

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Equal:
    """Both states generate every word with the same probability."""


@dataclass(frozen=True)
class Distinguished:
    """``word`` is generated with ``left_value`` on one side and ``right_value`` on the other."""

    word: str
    left_value: Fraction
    right_value: Fraction


EquivVerdict = Equal | Distinguished

EQUAL = Equal()


class _Basis:
    """Row-echelon basis over the rationals."""

    def __init__(self) -> None:
        self._rows: list[tuple[int, Vector]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def add(self, vector: Vector) -> bool:
        """Insert ``vector`` unless it lies in the span; tell whether it was inserted."""
        reduced = list(vector)
        for pivot, row in self._rows:
            factor = reduced[pivot]
            if factor:
                reduced = [x - factor * y for x, y in zip(reduced, row, strict=True)]
        pivot = next((i for i, x in enumerate(reduced) if x), None)
        if pivot is None:
            return False
        lead = reduced[pivot]
        self._rows.append((pivot, [x / lead for x in reduced]))
        return True


def _dot(left: Vector, right: Vector) -> Fraction:
    return sum((x * y for x, y in zip(left, right, strict=True)), ZERO_PROB)


def _step_forward(vector: Vector, rows: list[list[tuple[int, Fraction]]]) -> Vector:
    """Row vector times the sparse letter matrix."""
    result = [ZERO_PROB] * len(vector)
    for i, coefficient in enumerate(vector):
        if coefficient:
            for j, weight in rows[i]:
                result[j] += coefficient * weight
    return result


def lang_equiv(g: Gpts, x: str, y: str) -> EquivVerdict:
    """Decide whether states ``x`` and ``y`` of ``g`` generate the same probabilistic language.

    Words are explored breadth-first, shortest first and in alphabet order,
    keeping only those whose difference vector is linearly independent of the
    ones already seen. The first explored word on which the two states differ
    is returned as the witness.

    Raises:
        UnknownStateError: If ``x`` or ``y`` is not a state of ``g``.
    """
    require_valid(g)
    start = [ZERO_PROB] * len(g.states)
    start[g.index_of(x)] += 1
    start[g.index_of(y)] -= 1

    accept = accept_vector(g)
    matrices = letter_rows(g)
    basis = _Basis()
    queue: deque[tuple[str, Vector]] = deque()
    if basis.add(start):
        queue.append(("", start))

    while queue:
        word, vector = queue.popleft()
        if _dot(vector, accept) != ZERO_PROB:
            logger.debug(f"States {x} and {y} differ on {word!r} after {len(basis)} basis vectors")
            return Distinguished(word, word_prob(g, x, word), word_prob(g, y, word))
        for letter in g.alphabet:
            successor = _step_forward(vector, matrices[letter])
            if basis.add(successor):
                queue.append((word + letter, successor))

    logger.debug(f"States {x} and {y} are language equivalent ({len(basis)} basis vectors)")
    return EQUAL


def expr_equiv(e: Expr, f: Expr) -> EquivVerdict:
    """Decide language equivalence of two expressions through their derivative automata."""
    union = disjoint_union(reachable(e), reachable(f))
    left_root, right_root = union.start
    return lang_equiv(union, left_root, right_root)


@dataclass(frozen=True)
class Partition:
    """Assignment of states to numbered blocks."""

    assignment: Mapping[str, int]
    states: tuple[str, ...]

    def __getitem__(self, state: str) -> int:
        return self.assignment[state]

    def same_block(self, x: str, y: str) -> bool:
        return self.assignment[x] == self.assignment[y]

    def blocks(self) -> list[list[str]]:
        """Blocks in block-number order, each listing its states in state order."""
        grouped: dict[int, list[str]] = {}
        for state in self.states:
            grouped.setdefault(self.assignment[state], []).append(state)
        return [grouped[block] for block in sorted(grouped)]


def _renumber(keys: Mapping[str, object], states: tuple[str, ...]) -> dict[str, int]:
    """Number distinct keys in order of first appearance along ``states``."""
    numbering: dict[object, int] = {}
    return {state: numbering.setdefault(keys[state], len(numbering)) for state in states}


def bisim_classes(g: Gpts) -> Partition:
    """Coarsest partition whose blocks agree on ✓-mass and on the mass moved into each block per letter."""
    require_valid(g)
    rows = g.rows()
    assignment = _renumber({state: rows[state].weight(TERM) for state in g.states}, g.states)

    rounds = 0
    while True:
        rounds += 1
        signatures: dict[str, object] = {}
        for state in g.states:
            masses: dict[tuple[str, int], Fraction] = {}
            for output, weight in rows[state].items():
                if isinstance(output, Step):
                    key = (output.letter, assignment[output.target])
                    masses[key] = masses.get(key, ZERO_PROB) + weight
            signatures[state] = (assignment[state], tuple(sorted(masses.items())))
        refined = _renumber(signatures, g.states)
        if len(set(refined.values())) == len(set(assignment.values())):
            break
        assignment = refined

    logger.debug(f"Partition refinement stabilised after {rounds} rounds")
    return Partition(assignment=assignment, states=g.states)


def lang_equal_not_bisimilar(g: Gpts, partition: Partition | None = None) -> list[tuple[str, str]]:
    """Pairs of states in different blocks that are nevertheless language equivalent."""
    partition = partition or bisim_classes(g)
    pairs = []
    for i, x in enumerate(g.states):
        for y in g.states[i + 1 :]:
            if not partition.same_block(x, y) and isinstance(lang_equiv(g, x, y), Equal):
                pairs.append((x, y))
    return pairs
