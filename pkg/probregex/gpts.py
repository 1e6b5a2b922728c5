"""Generative probabilistic transition systems and their word semantics.

A ``Gpts`` maps every state to a subdistribution over ✓ and
``Step(letter, state)`` outputs. The probability that state ``q`` generates the
word ``w`` is defined inductively: the ✓-mass of ``q`` for the empty word, and
``sum(s * [[r]](v))`` over the ``a``-transitions ``q -a|s-> r`` for ``a v``.
"""

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from probregex.distributions import TERM, Output, Step, SubDist, Term
from probregex.errors import AlphabetError, InvalidGptsError, UnknownStateError
from probregex.expr import ONE_PROB, ZERO_PROB

logger = logging.getLogger(__name__)

Word = str
Vector = list[Fraction]


@dataclass(frozen=True, eq=True)
class Gpts:
    """A finite transition system.

    Rows of ``trans`` are raw mappings so that malformed input can be reported
    by ``validate`` instead of failing on construction. Missing rows are
    deadlocks.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    trans: Mapping[str, Mapping[Output, Fraction]]
    start: tuple[str, ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "_index", {state: i for i, state in enumerate(self.states)})

    def __hash__(self) -> int:
        return hash((self.states, self.alphabet, self.start))

    def index_of(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def has_state(self, state: str) -> bool:
        return state in self._index

    def row(self, state: str) -> SubDist[Output]:
        """Transition subdistribution of ``state``."""
        self.index_of(state)
        return SubDist(self.trans.get(state, {}))

    def rows(self) -> dict[str, SubDist[Output]]:
        return {state: self.row(state) for state in self.states}


def validate(g: Gpts) -> list[str]:
    """List every violation of the transition-system invariants; empty means valid."""
    violations: list[str] = []
    if len(set(g.states)) != len(g.states):
        duplicates = sorted({s for s in g.states if g.states.count(s) > 1})
        violations.append(f"duplicate states {', '.join(duplicates)}")
    for state in g.start:
        if not g.has_state(state):
            violations.append(f"start state {state!r} is not declared")
    for state, outputs in g.trans.items():
        if not g.has_state(state):
            violations.append(f"transitions from undeclared state {state!r}")
            continue
        mass = ZERO_PROB
        for output, weight in outputs.items():
            if weight < ZERO_PROB:
                violations.append(f"negative probability {weight} at state {state}")
            mass += weight
            if isinstance(output, Step):
                if output.letter not in g.alphabet:
                    violations.append(f"letter {output.letter!r} at state {state} is not in the alphabet")
                if not g.has_state(output.target):
                    violations.append(f"dangling target {output.target!r} at state {state}")
        if mass > ONE_PROB:
            violations.append(f"mass {mass} > 1 at state {state}")
    return violations


def require_valid(g: Gpts) -> Gpts:
    violations = validate(g)
    if violations:
        raise InvalidGptsError(violations)
    return g


def _check_word(g: Gpts, word: Word) -> None:
    for position, letter in enumerate(word):
        if letter not in g.alphabet:
            raise AlphabetError(f"Letter {letter!r} at position {position} is not in the alphabet {list(g.alphabet)}")


def accept_vector(g: Gpts) -> Vector:
    """✓-mass of each state, in state order."""
    return [g.trans.get(state, {}).get(TERM, ZERO_PROB) for state in g.states]


def letter_rows(g: Gpts) -> dict[str, list[list[tuple[int, Fraction]]]]:
    """Per letter, the sparse rows ``x -> [(y, weight)]`` of the ``a``-transition matrix."""
    matrices = {letter: [[] for _ in g.states] for letter in g.alphabet}
    for state in g.states:
        i = g.index_of(state)
        for output, weight in g.trans.get(state, {}).items():
            if isinstance(output, Step) and weight:
                matrices[output.letter][i].append((g.index_of(output.target), weight))
    return matrices


def apply_letter(rows: list[list[tuple[int, Fraction]]], vector: Vector) -> Vector:
    """Matrix-vector product of a sparse letter matrix with ``vector``."""
    return [sum((weight * vector[j] for j, weight in row), ZERO_PROB) for row in rows]


def word_prob(g: Gpts, state: str, word: Word) -> Fraction:
    """Probability that ``state`` generates ``word``, evaluated over suffixes.

    Raises:
        UnknownStateError: If ``state`` is not declared.
        AlphabetError: If ``word`` uses a letter outside the alphabet.
    """
    index = g.index_of(state)
    _check_word(g, word)
    matrices = letter_rows(g)
    vector = accept_vector(g)
    for letter in reversed(word):
        vector = apply_letter(matrices[letter], vector)
    return vector[index]


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterable[Word]:
    """All words of length at most ``max_len``, shortest first, then in alphabet order."""
    for length in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield "".join(letters)


def word_table(g: Gpts, state: str, max_len: int) -> dict[Word, Fraction]:
    """Probability of every word of length at most ``max_len`` generated from ``state``.

    Values for ``a w`` are obtained from those for ``w``, so each word costs one
    matrix-vector product.
    """
    index = g.index_of(state)
    matrices = letter_rows(g)
    vectors: dict[Word, Vector] = {"": accept_vector(g)}
    frontier = [""]
    for _ in range(max_len):
        next_frontier = []
        for suffix in frontier:
            for letter in g.alphabet:
                word = letter + suffix
                vectors[word] = apply_letter(matrices[letter], vectors[suffix])
                next_frontier.append(word)
        frontier = next_frontier
    return {word: vectors[word][index] for word in words_upto(g.alphabet, max_len)}


# --- Reactive view ---


@dataclass(frozen=True)
class Rpts:
    """Per state, an acceptance probability and per letter a subdistribution over successors."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    accept: Mapping[str, Fraction]
    next: Mapping[str, Mapping[str, SubDist[str]]]

    def successors(self, state: str, letter: str) -> SubDist[str]:
        return self.next.get(state, {}).get(letter, SubDist())


def to_rpts(g: Gpts) -> Rpts:
    """Reshuffle each transition subdistribution into acceptance plus per-letter successors."""
    accept: dict[str, Fraction] = {}
    successors: dict[str, dict[str, SubDist[str]]] = {}
    for state in g.states:
        row = g.row(state)
        accept[state] = row.weight(TERM)
        per_letter: dict[str, list[tuple[str, Fraction]]] = {letter: [] for letter in g.alphabet}
        for output, weight in row.items():
            if isinstance(output, Step):
                per_letter[output.letter].append((output.target, weight))
        successors[state] = {letter: SubDist(pairs) for letter, pairs in per_letter.items()}
    return Rpts(states=g.states, alphabet=g.alphabet, accept=accept, next=successors)


def from_rpts(r: Rpts, start: Iterable[str] = ()) -> Gpts:
    """Inverse of ``to_rpts``."""
    trans: dict[str, dict[Output, Fraction]] = {}
    for state in r.states:
        row: dict[Output, Fraction] = {}
        if r.accept.get(state, ZERO_PROB):
            row[TERM] = r.accept[state]
        for letter in r.alphabet:
            for target, weight in r.successors(state, letter).items():
                row[Step(letter, target)] = weight
        trans[state] = row
    return Gpts(states=r.states, alphabet=r.alphabet, trans=trans, start=tuple(start))


def rpts_word_prob(r: Rpts, state: str, word: Word) -> Fraction:
    """Word probability as a product of per-letter linear maps applied forward from ``state``."""
    if state not in r.states:
        raise UnknownStateError(state)
    for position, letter in enumerate(word):
        if letter not in r.alphabet:
            raise AlphabetError(f"Letter {letter!r} at position {position} is not in the alphabet {list(r.alphabet)}")
    distribution: dict[str, Fraction] = {state: ONE_PROB}
    for letter in word:
        moved: dict[str, Fraction] = {}
        for source, weight in distribution.items():
            for target, step in r.successors(source, letter).items():
                moved[target] = moved.get(target, ZERO_PROB) + weight * step
        distribution = moved
    return sum((weight * r.accept.get(source, ZERO_PROB) for source, weight in distribution.items()), ZERO_PROB)


def disjoint_union(left: Gpts, right: Gpts, left_prefix: str = "L.", right_prefix: str = "R.") -> Gpts:
    """Side-by-side union with states renamed by ``left_prefix`` and ``right_prefix``.

    The alphabet is the union of both alphabets; start states are kept, renamed.
    """

    def rename(g: Gpts, prefix: str) -> dict[str, dict[Output, Fraction]]:
        return {
            prefix + state: {
                (output if isinstance(output, Term) else Step(output.letter, prefix + output.target)): weight
                for output, weight in g.trans.get(state, {}).items()
            }
            for state in g.states
        }

    return Gpts(
        states=tuple(left_prefix + s for s in left.states) + tuple(right_prefix + s for s in right.states),
        alphabet=tuple(sorted(set(left.alphabet) | set(right.alphabet))),
        trans=rename(left, left_prefix) | rename(right, right_prefix),
        start=tuple(left_prefix + s for s in left.start) + tuple(right_prefix + s for s in right.start),
    )
