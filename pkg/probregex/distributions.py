"""Finitely supported subprobability distributions and transition outputs."""

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, TypeVar

from probregex.errors import SubDistError
from probregex.expr import ONE_PROB, ZERO_PROB, as_prob, complement

T = TypeVar("T")
S = TypeVar("S")


class Term:
    """Successful termination, written ✓."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "TERM"

    def __reduce__(self) -> str:
        return "TERM"


TERM = Term()


@dataclass(frozen=True)
class Step(Generic[S]):
    """Performing ``letter`` and moving to ``target``."""

    letter: str
    target: S


Output = Term | Step


class SubDist(Mapping[T, Fraction]):
    """Immutable map from outcomes to positive probabilities with total mass at most 1.

    Zero weights are dropped on construction. Equal outcomes given more than
    once are summed.
    """

    __slots__ = ("_weights", "_mass")

    def __init__(self, weights: Mapping[T, Fraction] | Iterable[tuple[T, Fraction]] = ()) -> None:
        pairs = weights.items() if isinstance(weights, Mapping) else weights
        accumulated: dict[T, Fraction] = {}
        for outcome, weight in pairs:
            weight = Fraction(weight)
            if weight < ZERO_PROB:
                raise SubDistError(f"Negative weight {weight} for {outcome!r}")
            accumulated[outcome] = accumulated.get(outcome, ZERO_PROB) + weight
        self._weights = {outcome: weight for outcome, weight in accumulated.items() if weight != ZERO_PROB}
        self._mass = sum(self._weights.values(), ZERO_PROB)
        if self._mass > ONE_PROB:
            raise SubDistError(f"Subdistribution mass {self._mass} exceeds 1")

    def __getitem__(self, outcome: T) -> Fraction:
        return self._weights[outcome]

    def __iter__(self) -> Iterator[T]:
        return iter(self._weights)

    def __len__(self) -> int:
        return len(self._weights)

    def __hash__(self) -> int:
        return hash(frozenset(self._weights.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{outcome!r}: {weight}" for outcome, weight in self._weights.items())
        return f"SubDist({{{inner}}})"

    @property
    def mass(self) -> Fraction:
        return self._mass

    def weight(self, outcome: T) -> Fraction:
        """Weight of ``outcome``, 0 outside the support."""
        return self._weights.get(outcome, ZERO_PROB)

    def scale(self, factor: Fraction) -> "SubDist[T]":
        return SubDist((outcome, factor * weight) for outcome, weight in self._weights.items())


EMPTY: SubDist = SubDist()


def dirac(outcome: T) -> SubDist[T]:
    return SubDist({outcome: ONE_PROB})


def convex_combine(p: Fraction, first: SubDist[T], second: SubDist[T]) -> SubDist[T]:
    """Pointwise ``p * first + (1 - p) * second``."""
    p = as_prob(p)
    return SubDist([*first.scale(p).items(), *second.scale(complement(p)).items()])


def output_sort_key(output: Output, target_key: Callable[[object], object] = str) -> tuple:
    """Order ✓ first, then steps by letter and by ``target_key`` of the target."""
    if isinstance(output, Term):
        return (0, "", "")
    return (1, output.letter, target_key(output.target))
