"""Abstract syntax of probabilistic regular expressions.

Expressions are immutable and compared structurally; structural equality is
what identifies states of the derivative automaton. Probabilities are exact
``Fraction`` values.
"""

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from probregex.config import config
from probregex.errors import AlphabetError, ProbabilityRangeError, WeightSumError

Prob = Fraction

ZERO_PROB = Fraction(0)
ONE_PROB = Fraction(1)


def as_prob(value: Fraction | int | str) -> Fraction:
    """Coerce ``value`` to a Fraction and check that it lies in [0, 1]."""
    prob = Fraction(value)
    if not ZERO_PROB <= prob <= ONE_PROB:
        raise ProbabilityRangeError(f"Probability {prob} is outside [0, 1]")
    return prob


def complement(p: Fraction) -> Fraction:
    """Return ``1 - p``."""
    return ONE_PROB - p


class Expr:
    """Base class of all expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(Expr):
    """Deadlock: assigns probability 0 to every word."""


@dataclass(frozen=True)
class One(Expr):
    """Immediate successful termination."""


@dataclass(frozen=True)
class Act(Expr):
    letter: str

    def __post_init__(self) -> None:
        if not is_letter(self.letter):
            raise AlphabetError(f"Invalid letter {self.letter!r}: letters are single characters a-z")


# Composite nodes cache their hash: solved expressions share large subtrees and
# the derivative automaton hashes states constantly.


@dataclass(frozen=True)
class Choice(Expr):
    left: Expr
    p: Fraction
    right: Expr
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", as_prob(self.p))
        object.__setattr__(self, "_hash", hash(("choice", self.left, self.p, self.right)))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class Seq(Expr):
    left: Expr
    right: Expr
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("seq", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class Star(Expr):
    body: Expr
    p: Fraction
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", as_prob(self.p))
        object.__setattr__(self, "_hash", hash(("star", self.body, self.p)))

    def __hash__(self) -> int:
        return self._hash


ZERO = Zero()
ONE = One()


def is_letter(symbol: str) -> bool:
    return len(symbol) == 1 and "a" <= symbol <= "z"


@functools.lru_cache(maxsize=config.derivative_cache_size)
def termination_weight(e: Expr) -> Fraction:
    """Probability that ``e`` accepts the empty word, computed syntactically."""
    match e:
        case One():
            return ONE_PROB
        case Zero() | Act():
            return ZERO_PROB
        case Choice(left, p, right):
            return p * termination_weight(left) + complement(p) * termination_weight(right)
        case Seq(left, right):
            return termination_weight(left) * termination_weight(right)
        case Star(body, p):
            inner = termination_weight(body)
            # A loop whose body always terminates without acting diverges
            if inner == ONE_PROB and p == ONE_PROB:
                return ZERO_PROB
            return complement(p) / (ONE_PROB - p * inner)
    raise TypeError(f"Not an expression: {e!r}")


def nary_choice(terms: Iterable[tuple[Fraction, Expr]]) -> Expr:
    """Fold a sub-convex sum of weighted expressions into binary choices.

    Zero-weight terms are dropped first. An empty sum is ``Zero``; a term of
    weight 1 is returned as is; otherwise the first term is the pivot and the
    remaining weights are rescaled by ``1 - p_first``.

    Raises:
        ProbabilityRangeError: If a weight lies outside [0, 1].
        WeightSumError: If the weights add up to more than 1.
    """
    weighted = [(as_prob(p), e) for p, e in terms]
    total = sum((p for p, _ in weighted), ZERO_PROB)
    if total > ONE_PROB:
        raise WeightSumError(f"Convex sum weights add up to {total} > 1")
    return _fold(tuple((p, e) for p, e in weighted if p != ZERO_PROB))


def _fold(terms: Sequence[tuple[Fraction, Expr]]) -> Expr:
    if not terms:
        return ZERO
    for p, e in terms:
        if p == ONE_PROB:
            return e
    (pivot_p, pivot_e), rest = terms[0], terms[1:]
    scale = complement(pivot_p)
    return Choice(pivot_e, pivot_p, _fold(tuple((p / scale, e) for p, e in rest)))


def size_bound(e: Expr) -> int:
    """Upper bound on the number of states reachable from ``e``."""
    match e:
        case Zero() | One():
            return 1
        case Act():
            return 2
        case Choice(left, _, right) | Seq(left, right):
            return size_bound(left) + size_bound(right)
        case Star(body, _):
            return size_bound(body) + 1
    raise TypeError(f"Not an expression: {e!r}")


def letters(e: Expr) -> frozenset[str]:
    """Set of alphabet symbols occurring in ``e``."""
    match e:
        case Act(letter):
            return frozenset(letter)
        case Choice(left, _, right) | Seq(left, right):
            return letters(left) | letters(right)
        case Star(body, _):
            return letters(body)
    return frozenset()
