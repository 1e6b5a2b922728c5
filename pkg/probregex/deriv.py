"""Antimirov derivatives and the derivative automaton of an expression.

``derivative(e)`` is a subdistribution over ✓ and ``Step(letter, e')`` pairs.
Closing it under successors gives a finite transition system whose states are
expressions, deduplicated by structural equality.
"""

import functools
import logging
from collections import deque
from collections.abc import Iterable

from probregex.config import config
from probregex.distributions import EMPTY, TERM, Output, Step, SubDist, Term, convex_combine, dirac, output_sort_key
from probregex.expr import (
    ONE,
    ONE_PROB,
    Act,
    Choice,
    Expr,
    One,
    Seq,
    Star,
    Zero,
    complement,
    letters,
    nary_choice,
)
from probregex.gpts import Gpts
from probregex.parser import render

logger = logging.getLogger(__name__)


def _continue_with(nu: SubDist[Output], f: Expr) -> SubDist[Output]:
    """Sequence the behaviour ``nu`` with ``f``.

    The ✓-mass of ``nu`` is handed over to the derivative of ``f``; every step
    ``(a, e')`` continues as ``(a, e';f)``.
    """
    pairs: list[tuple[Output, object]] = []
    exit_mass = nu.weight(TERM)
    if exit_mass:
        pairs.extend(derivative(f).scale(exit_mass).items())
    pairs.extend((Step(o.letter, Seq(o.target, f)), w) for o, w in nu.items() if isinstance(o, Step))
    return SubDist(pairs)


@functools.lru_cache(maxsize=config.derivative_cache_size)
def derivative(e: Expr) -> SubDist[Output]:
    """Antimirov derivative of ``e``."""
    match e:
        case Zero():
            return EMPTY
        case One():
            return dirac(TERM)
        case Act(letter):
            return dirac(Step(letter, ONE))
        case Choice(left, p, right):
            return convex_combine(p, derivative(left), derivative(right))
        case Seq(left, right):
            return _continue_with(derivative(left), right)
        case Star(body, p):
            inner = derivative(body)
            exit_mass = inner.weight(TERM)
            if exit_mass == ONE_PROB and p == ONE_PROB:
                # Divergent loop behaves as deadlock
                return EMPTY
            denominator = ONE_PROB - p * exit_mass
            pairs: list[tuple[Output, object]] = [(TERM, complement(p) / denominator)]
            pairs.extend(
                (Step(o.letter, Seq(o.target, e)), p * w / denominator) for o, w in inner.items() if isinstance(o, Step)
            )
            return SubDist(pairs)
    raise TypeError(f"Not an expression: {e!r}")


def sorted_support(nu: SubDist[Output]) -> list[Output]:
    """Support of ``nu`` with ✓ first, then steps by letter and rendered target."""
    return sorted(nu, key=lambda o: output_sort_key(o, render))


def reachable_exprs(e: Expr) -> list[Expr]:
    """Expressions reachable from ``e`` through derivatives, in breadth-first discovery order."""
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        current = queue.popleft()
        for output in sorted_support(derivative(current)):
            if isinstance(output, Step) and output.target not in seen:
                seen.add(output.target)
                order.append(output.target)
                queue.append(output.target)
    logger.debug(f"Derivative closure of {render(e)} has {len(order)} states")
    return order


def reachable(e: Expr, alphabet: Iterable[str] | None = None) -> Gpts:
    """Derivative automaton of ``e``.

    States are named by their rendering; ``e`` is the single start state.
    The alphabet defaults to the letters occurring in ``e``.
    """
    exprs = reachable_exprs(e)
    names = {expr: render(expr) for expr in exprs}
    trans = {
        names[expr]: {
            (output if isinstance(output, Term) else Step(output.letter, names[output.target])): weight
            for output, weight in derivative(expr).items()
        }
        for expr in exprs
    }
    symbols = letters(e) if alphabet is None else frozenset(alphabet) | letters(e)
    return Gpts(
        states=tuple(names[expr] for expr in exprs),
        alphabet=tuple(sorted(symbols)),
        trans=trans,
        start=(names[e],),
    )


def exit_expr(output: Output) -> Expr:
    """``1`` for ✓ and ``a;e'`` for a step ``(a, e')``."""
    if isinstance(output, Step):
        return Seq(Act(output.letter), output.target)
    return ONE


def fundamental_form(e: Expr) -> Expr:
    """One-step unfolding of ``e`` as a convex sum over its derivative's support."""
    nu = derivative(e)
    return nary_choice((nu[output], exit_expr(output)) for output in sorted_support(nu))
