"""Text syntax of probabilistic regular expressions.

Grammar, lowest precedence first::

    choice := seq ("+[" prob "]" choice)?
    seq    := star (";" seq)?
    star   := atom ("^[" prob "]")*
    atom   := "0" | "1" | letter | "(" choice ")"

``⊕[p]`` is accepted for ``+[p]`` and ``^{[p]}`` for ``^[p]``. Whitespace is
insignificant. Both binary operators associate to the right.
"""

import functools
import re
from collections.abc import Iterable
from decimal import Decimal
from fractions import Fraction

from probregex.config import config
from probregex.errors import AlphabetError, ExprSyntaxError, ProbabilityRangeError
from probregex.expr import ONE, ONE_PROB, ZERO, ZERO_PROB, Act, Choice, Expr, One, Seq, Star, Zero, is_letter

_PROB_RE = re.compile(r"\s*(?:(?P<num>\d+)\s*/\s*(?P<den>\d+)|(?P<dec>\d*\.\d+|\d+))\s*")

_CHOICE_OPENERS = ("+[", "⊕[")
_STAR_OPENERS = (("^{[", "]}"), ("^[", "]"))

# Binding strength of each node kind, used for minimal parenthesisation
_CHOICE_LEVEL = 0
_SEQ_LEVEL = 1
_STAR_LEVEL = 2
_ATOM_LEVEL = 3


def parse_prob(literal: str) -> Fraction:
    """Parse ``n/d``, a decimal such as ``0.25`` or an integer into an exact probability.

    Raises:
        ValueError: If the literal is malformed.
        ProbabilityRangeError: If the value lies outside [0, 1] or the denominator is zero.
    """
    match = _PROB_RE.fullmatch(literal)
    if match is None:
        raise ValueError(f"Malformed probability literal {literal!r}")
    if match["num"] is not None:
        if int(match["den"]) == 0:
            raise ProbabilityRangeError(f"Probability literal {literal.strip()!r} has a zero denominator")
        value = Fraction(int(match["num"]), int(match["den"]))
    else:
        value = Fraction(match["dec"])
    if not ZERO_PROB <= value <= ONE_PROB:
        raise ProbabilityRangeError(f"Probability literal {literal.strip()!r} is outside [0, 1]")
    return value


def render_prob(p: Fraction) -> str:
    return str(p)


def render_decimal(p: Fraction, digits: int) -> str:
    """``p`` rounded half-to-even to ``digits`` decimal places."""
    rounded = round(p, digits)
    return format(Decimal(rounded.numerator) / Decimal(rounded.denominator), f".{digits}f")


class _Parser:
    def __init__(self, text: str, alphabet: frozenset[str] | None) -> None:
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def parse(self) -> Expr:
        expr = self._choice()
        self._skip_ws()
        if self.pos < len(self.text):
            raise ExprSyntaxError(f"Unexpected symbol {self.text[self.pos]!r}", self.pos)
        return expr

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _take(self, token: str) -> bool:
        self._skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def _prob(self, closer: str) -> Fraction:
        start = self.pos
        end = self.text.find(closer, start)
        if end < 0:
            raise ExprSyntaxError(f"Missing {closer!r} after probability", start)
        literal = self.text[start:end]
        try:
            value = parse_prob(literal)
        except ValueError as e:
            raise ExprSyntaxError(str(e), start) from e
        self.pos = end + len(closer)
        return value

    def _choice(self) -> Expr:
        left = self._seq()
        for opener in _CHOICE_OPENERS:
            if self._take(opener):
                p = self._prob("]")
                return Choice(left, p, self._choice())
        return left

    def _seq(self) -> Expr:
        left = self._star()
        if self._take(";"):
            return Seq(left, self._seq())
        return left

    def _star(self) -> Expr:
        expr = self._atom()
        while True:
            for opener, closer in _STAR_OPENERS:
                if self._take(opener):
                    expr = Star(expr, self._prob(closer))
                    break
            else:
                return expr

    def _atom(self) -> Expr:
        self._skip_ws()
        if self.pos >= len(self.text):
            raise ExprSyntaxError("Unexpected end of input", self.pos)
        symbol = self.text[self.pos]
        if symbol == "(":
            self.pos += 1
            inner = self._choice()
            if not self._take(")"):
                raise ExprSyntaxError("Expected ')'", self.pos)
            return inner
        if symbol == "0":
            self.pos += 1
            return ZERO
        if symbol == "1":
            self.pos += 1
            return ONE
        if is_letter(symbol):
            if self.alphabet is not None and symbol not in self.alphabet:
                raise AlphabetError(f"Letter {symbol!r} at position {self.pos} is not in the alphabet")
            self.pos += 1
            return Act(symbol)
        raise ExprSyntaxError(f"Unknown symbol {symbol!r}", self.pos)


def parse(text: str, alphabet: Iterable[str] | None = None) -> Expr:
    """Parse ``text`` into an expression.

    Args:
        text: Expression source.
        alphabet: When given, letters outside it are rejected.

    Raises:
        ExprSyntaxError: On malformed input or an out-of-range probability.
        AlphabetError: On a letter outside ``alphabet``.
    """
    return _Parser(text, frozenset(alphabet) if alphabet is not None else None).parse()


def _level(e: Expr) -> int:
    match e:
        case Choice():
            return _CHOICE_LEVEL
        case Seq():
            return _SEQ_LEVEL
        case Star():
            return _STAR_LEVEL
    return _ATOM_LEVEL


def _wrap(e: Expr, minimum: int) -> str:
    text = render(e)
    return text if _level(e) >= minimum else f"({text})"


@functools.lru_cache(maxsize=config.derivative_cache_size)
def render(e: Expr) -> str:
    """Render ``e`` with the fewest parentheses that ``parse`` reads back to ``e``."""
    match e:
        case Zero():
            return "0"
        case One():
            return "1"
        case Act(letter):
            return letter
        case Choice(left, p, right):
            return f"{_wrap(left, _SEQ_LEVEL)} +[{render_prob(p)}] {render(right)}"
        case Seq(left, right):
            return f"{_wrap(left, _STAR_LEVEL)};{_wrap(right, _SEQ_LEVEL)}"
        case Star(body, p):
            return f"{_wrap(body, _STAR_LEVEL)}^[{render_prob(p)}]"
    raise TypeError(f"Not an expression: {e!r}")
