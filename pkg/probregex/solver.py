"""Left-affine equation systems and their solution by elimination.

A left-affine system over unknowns ``Q`` reads, for every ``q``::

    h(q) == (+ over q' of p[q, q'] * m[q, q'];h(q'))  +  r[q] * b[q]

with every row summing to 1 and every coefficient ``m[q, q']`` unable to
terminate immediately. Such a system has a unique solution up to
equivalence; ``solve`` computes one by eliminating unknowns one at a time.
Solving the system induced by a transition system turns each of its states
into an expression with the same language.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from probregex.distributions import TERM, Step
from probregex.equiv import EquivVerdict, expr_equiv
from probregex.errors import SystemInvariantError
from probregex.expr import (
    ONE,
    ONE_PROB,
    ZERO,
    ZERO_PROB,
    Act,
    Expr,
    Seq,
    Star,
    nary_choice,
    termination_weight,
)
from probregex.gpts import Gpts, require_valid

logger = logging.getLogger(__name__)

Pair = tuple[str, str]


@dataclass(frozen=True)
class LeftAffineSystem:
    """Coefficients of a left-affine system; absent entries are ``0`` (probabilities) or ``Zero``."""

    unknowns: tuple[str, ...]
    m: Mapping[Pair, Expr] = field(default_factory=dict)
    p: Mapping[Pair, Fraction] = field(default_factory=dict)
    b: Mapping[str, Expr] = field(default_factory=dict)
    r: Mapping[str, Fraction] = field(default_factory=dict)

    def coefficient(self, q: str, target: str) -> Expr:
        return self.m.get((q, target), ZERO)

    def weight(self, q: str, target: str) -> Fraction:
        return self.p.get((q, target), ZERO_PROB)

    def constant(self, q: str) -> Expr:
        return self.b.get(q, ZERO)

    def constant_weight(self, q: str) -> Fraction:
        return self.r.get(q, ZERO_PROB)


def check_invariants(s: LeftAffineSystem) -> list[str]:
    """Row-sum and productivity violations of ``s``; empty when the system is well formed."""
    violations = []
    known = set(s.unknowns)
    for q, target in [*s.m, *s.p]:
        if q not in known or target not in known:
            violations.append(f"coefficient ({q}, {target}) mentions an unknown outside the system")
    for q in s.unknowns:
        weights = [s.weight(q, target) for target in s.unknowns] + [s.constant_weight(q)]
        if any(not ZERO_PROB <= w <= ONE_PROB for w in weights):
            violations.append(f"row {q} has a weight outside [0, 1]")
        total = sum(weights, ZERO_PROB)
        if total != ONE_PROB:
            violations.append(f"row {q} sums to {total}, expected 1")
        for target in s.unknowns:
            if termination_weight(s.coefficient(q, target)) != ZERO_PROB:
                violations.append(f"coefficient ({q}, {target}) can terminate immediately")
    return violations


def system_of(g: Gpts) -> LeftAffineSystem:
    """The left-affine system whose unique solution gives each state's expression."""
    require_valid(g)
    m: dict[Pair, Expr] = {}
    p: dict[Pair, Fraction] = {}
    b: dict[str, Expr] = {}
    r: dict[str, Fraction] = {}
    for x in g.states:
        row = g.row(x)
        by_target: dict[str, dict[str, Fraction]] = {}
        for output, weight in row.items():
            if isinstance(output, Step):
                by_target.setdefault(output.target, {})[output.letter] = weight
        for target, per_letter in by_target.items():
            total = sum(per_letter.values(), ZERO_PROB)
            p[x, target] = total
            m[x, target] = nary_choice((per_letter[a] / total, Act(a)) for a in g.alphabet if a in per_letter)
        r[x] = ONE_PROB - sum(p.get((x, target), ZERO_PROB) for target in g.states)
        b[x] = nary_choice([(row.weight(TERM) / r[x], ONE)]) if r[x] else ZERO
    return LeftAffineSystem(unknowns=g.states, m=m, p=p, b=b, r=r)


def _solve(
    unknowns: Sequence[str],
    m: dict[Pair, Expr],
    p: dict[Pair, Fraction],
    b: dict[str, Expr],
    r: dict[str, Fraction],
) -> dict[str, Expr]:
    last = unknowns[-1]
    loop = Star(m.get((last, last), ZERO), p.get((last, last), ZERO_PROB))
    if len(unknowns) == 1:
        return {last: Seq(loop, b.get(last, ZERO))}

    rest = unknowns[:-1]
    stay_out = ONE_PROB - p.get((last, last), ZERO_PROB)
    r_last = r.get(last, ZERO_PROB)
    b_last = b.get(last, ZERO)
    logger.debug(f"Eliminating {last}, {len(rest)} unknowns remain")

    reduced_m: dict[Pair, Expr] = {}
    reduced_p: dict[Pair, Fraction] = {}
    reduced_b: dict[str, Expr] = {}
    reduced_r: dict[str, Fraction] = {}
    for j in rest:
        into_last = p.get((j, last), ZERO_PROB)
        m_into_last = m.get((j, last), ZERO)
        for i in rest:
            direct = p.get((j, i), ZERO_PROB)
            if stay_out:
                via = into_last * p.get((last, i), ZERO_PROB) / stay_out
                detour = Seq(m_into_last, Seq(loop, m.get((last, i), ZERO)))
            else:
                via, detour = ZERO_PROB, ZERO
            total = direct + via
            if total:
                reduced_p[j, i] = total
                reduced_m[j, i] = nary_choice([(direct / total, m.get((j, i), ZERO)), (via / total, detour)])
        if stay_out:
            # Mass into ``last`` leaves through its constant part
            exit_via = into_last * r_last / stay_out
            exit_expr = Seq(m_into_last, Seq(loop, b_last))
        else:
            # ``last`` never leaves its loop: that mass is lost
            exit_via = into_last
            exit_expr = Seq(m_into_last, Seq(loop, ZERO))
        constant = r.get(j, ZERO_PROB) + exit_via
        reduced_r[j] = constant
        reduced_b[j] = (
            nary_choice([(r.get(j, ZERO_PROB) / constant, b.get(j, ZERO)), (exit_via / constant, exit_expr)])
            if constant
            else ZERO
        )

    solution = _solve(rest, reduced_m, reduced_p, reduced_b, reduced_r)
    if stay_out:
        tail = nary_choice(
            [(p.get((last, i), ZERO_PROB) / stay_out, Seq(m.get((last, i), ZERO), solution[i])) for i in rest]
            + [(r_last / stay_out, b_last)]
        )
    else:
        tail = ZERO
    solution[last] = Seq(loop, tail)
    return solution


def solve(s: LeftAffineSystem, order: Sequence[str] | None = None) -> dict[str, Expr]:
    """Solve ``s``, eliminating unknowns from the end of ``order`` (default: ``s.unknowns``).

    Raises:
        SystemInvariantError: If a row does not sum to 1 or a coefficient can terminate immediately.
        ValueError: If ``order`` is not a permutation of the unknowns.
    """
    violations = check_invariants(s)
    if violations:
        raise SystemInvariantError(violations)
    order = tuple(s.unknowns if order is None else order)
    if sorted(order) != sorted(s.unknowns) or len(set(order)) != len(order):
        raise ValueError(f"Elimination order {list(order)} is not a permutation of {list(s.unknowns)}")
    if not order:
        return {}
    return _solve(order, dict(s.m), dict(s.p), dict(s.b), dict(s.r))


def gpts_to_expr(g: Gpts, state: str) -> Expr:
    """Expression generating the same probabilistic language as ``state``.

    Raises:
        UnknownStateError: If ``state`` is not a state of ``g``.
    """
    g.index_of(state)
    return solve(system_of(g))[state]


def unfold(g: Gpts, solution: Mapping[str, Expr], state: str) -> Expr:
    """The right-hand side a solution must satisfy at ``state``: one step of ``g`` followed by ``solution``."""
    row = g.row(state)
    terms = [(row.weight(TERM), ONE)] + [
        (row.weight(Step(a, target)), Seq(Act(a), solution[target])) for target in g.states for a in g.alphabet
    ]
    return nary_choice(terms)


def check_solution(g: Gpts, solution: Mapping[str, Expr]) -> dict[str, EquivVerdict]:
    """Compare every ``solution[x]`` against its one-step unfolding."""
    return {state: expr_equiv(solution[state], unfold(g, solution, state)) for state in g.states}
