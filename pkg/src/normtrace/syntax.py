"""Concrete grammar for formulas and traces.

Formula grammar, lowest to highest precedence::

    level 1  (x)            compensation connective, right associative
    level 2  ->             implication, right associative
    level 3  |              disjunction, left associative
    level 4  &              conjunction, left associative
    level 5  U              until, right associative
    level 6  ! G F X        prefix operators, stackable
    level 7  true false atoms ( ... )

Unicode aliases are accepted on input: ``⊗`` for ``(x)``, ``→`` ``∨`` ``∧``
``¬`` for their ASCII forms.  ``G F X U true false`` are reserved words and
cannot be atom names.  Note that ``(x)`` always lexes as the compensation
operator; an atom named ``x`` can be parenthesised as ``( x )``.

Trace grammar::

    trace := (state (";" state)*)? "|" state (";" state)*
    state := "{" (atom ("," atom)*)? "}"

States before the bar form the prefix (possibly none), states after it form
the loop (at least one).  Whitespace between tokens is insignificant.

Printers emit fully parenthesised ASCII with atoms sorted inside states, so
printing then parsing reproduces the value exactly.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .formulas import (
    And,
    Atom,
    FalseConst,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    OTimes,
    RESERVED_WORDS,
    TrueConst,
    Until,
)
from .traces import LassoTrace


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseErrorKind(enum.Enum):
    UNEXPECTED_TOKEN = "UnexpectedToken"
    UNBALANCED_PAREN = "UnbalancedParen"
    RESERVED_ATOM = "ReservedAtom"
    EMPTY_LOOP = "EmptyLoop"
    BAD_STATE_SYNTAX = "BadStateSyntax"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, kind: ParseErrorKind):
        super().__init__(message)
        self.message = message
        self.span = span
        self.kind = kind

    def __str__(self) -> str:
        return f"{self.message} (at {self.span.start}..{self.span.end})"


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    start: int
    end: int


_FORMULA_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<otimes>\(x\)|⊗)
    | (?P<implies>->|→)
    | (?P<or>\||∨)
    | (?P<and>&|∧)
    | (?P<not>!|¬)
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_TRACE_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<lbrace>\{)
    | (?P<rbrace>\})
    | (?P<comma>,)
    | (?P<semi>;)
    | (?P<bar>\|)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str, token_re: re.Pattern[str]) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = token_re.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}",
                SourceSpan(pos, pos + 1),
                ParseErrorKind.UNEXPECTED_TOKEN,
            )
        kind = match.lastgroup
        assert kind is not None
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), match.start(), match.end()))
        pos = match.end()
    tokens.append(_Token("eof", "", len(text), len(text)))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        if token.kind != "eof":
            self.index += 1
        return token

    def match(self, kind: str) -> bool:
        if self.current.kind == kind:
            self.index += 1
            return True
        return False

    def span(self) -> SourceSpan:
        return SourceSpan(self.current.start, self.current.end)

    def fail(self, message: str, kind: ParseErrorKind) -> ParseError:
        token = self.current
        shown = message if token.kind != "eof" else message + " (input ended)"
        return ParseError(shown, SourceSpan(token.start, token.end), kind)


# --- formulas ---------------------------------------------------------------

_PREFIX_OPS = {"G": Globally, "F": Finally, "X": Next}


def parse_formula(text: str) -> Formula:
    cursor = _Cursor(_tokenize(text, _FORMULA_TOKEN_RE))
    formula = _parse_otimes(cursor)
    if cursor.current.kind == "rparen":
        raise cursor.fail("unbalanced ')'", ParseErrorKind.UNBALANCED_PAREN)
    if cursor.current.kind != "eof":
        raise cursor.fail(
            f"unexpected {cursor.current.text!r} after formula",
            ParseErrorKind.UNEXPECTED_TOKEN,
        )
    return formula


def _parse_otimes(cursor: _Cursor) -> Formula:
    left = _parse_implies(cursor)
    if cursor.match("otimes"):
        return OTimes(left, _parse_otimes(cursor))
    return left


def _parse_implies(cursor: _Cursor) -> Formula:
    left = _parse_or(cursor)
    if cursor.match("implies"):
        return Implies(left, _parse_implies(cursor))
    return left


def _parse_or(cursor: _Cursor) -> Formula:
    left = _parse_and(cursor)
    while cursor.match("or"):
        left = Or(left, _parse_and(cursor))
    return left


def _parse_and(cursor: _Cursor) -> Formula:
    left = _parse_until(cursor)
    while cursor.match("and"):
        left = And(left, _parse_until(cursor))
    return left


def _parse_until(cursor: _Cursor) -> Formula:
    left = _parse_unary(cursor)
    token = cursor.current
    if token.kind == "ident" and token.text == "U":
        cursor.advance()
        return Until(left, _parse_until(cursor))
    return left


def _parse_unary(cursor: _Cursor) -> Formula:
    token = cursor.current
    if token.kind == "not":
        cursor.advance()
        return Not(_parse_unary(cursor))
    if token.kind == "ident" and token.text in _PREFIX_OPS:
        cursor.advance()
        return _PREFIX_OPS[token.text](_parse_unary(cursor))
    return _parse_primary(cursor)


def _parse_primary(cursor: _Cursor) -> Formula:
    token = cursor.current
    if token.kind == "lparen":
        cursor.advance()
        inner = _parse_otimes(cursor)
        if not cursor.match("rparen"):
            raise cursor.fail("expected ')'", ParseErrorKind.UNBALANCED_PAREN)
        return inner
    if token.kind == "ident":
        if token.text == "true":
            cursor.advance()
            return TrueConst()
        if token.text == "false":
            cursor.advance()
            return FalseConst()
        if token.text in RESERVED_WORDS:
            raise cursor.fail(
                f"reserved word {token.text!r} cannot be an atom",
                ParseErrorKind.RESERVED_ATOM,
            )
        cursor.advance()
        return Atom(token.text)
    raise cursor.fail(
        f"expected a formula, found {token.text!r}" if token.kind != "eof" else "expected a formula",
        ParseErrorKind.UNEXPECTED_TOKEN,
    )


def print_formula(formula: Formula) -> str:
    """Fully parenthesised ASCII rendering; parses back to the same tree."""
    if isinstance(formula, TrueConst):
        return "true"
    if isinstance(formula, FalseConst):
        return "false"
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Not):
        return f"(!{print_formula(formula.operand)})"
    if isinstance(formula, Next):
        return f"(X {print_formula(formula.operand)})"
    if isinstance(formula, Finally):
        return f"(F {print_formula(formula.operand)})"
    if isinstance(formula, Globally):
        return f"(G {print_formula(formula.operand)})"
    if isinstance(formula, And):
        return f"({print_formula(formula.left)} & {print_formula(formula.right)})"
    if isinstance(formula, Or):
        return f"({print_formula(formula.left)} | {print_formula(formula.right)})"
    if isinstance(formula, Implies):
        return f"({print_formula(formula.left)} -> {print_formula(formula.right)})"
    if isinstance(formula, Until):
        return f"({print_formula(formula.left)} U {print_formula(formula.right)})"
    if isinstance(formula, OTimes):
        return f"({print_formula(formula.left)} (x) {print_formula(formula.right)})"
    raise TypeError(f"not a formula node: {formula!r}")


# --- traces -----------------------------------------------------------------


def parse_trace(text: str) -> LassoTrace:
    cursor = _Cursor(_tokenize(text, _TRACE_TOKEN_RE))
    prefix: list[frozenset[str]] = []
    if cursor.current.kind == "lbrace":
        prefix.append(_parse_state(cursor))
        while cursor.match("semi"):
            prefix.append(_parse_state(cursor))
    if not cursor.match("bar"):
        raise cursor.fail(
            "expected '|' between prefix and loop",
            ParseErrorKind.UNEXPECTED_TOKEN,
        )
    if cursor.current.kind != "lbrace":
        raise cursor.fail("loop must contain at least one state", ParseErrorKind.EMPTY_LOOP)
    loop = [_parse_state(cursor)]
    while cursor.match("semi"):
        loop.append(_parse_state(cursor))
    if cursor.current.kind != "eof":
        raise cursor.fail(
            f"unexpected {cursor.current.text!r} after trace",
            ParseErrorKind.UNEXPECTED_TOKEN,
        )
    return LassoTrace(prefix, loop)


def _parse_state(cursor: _Cursor) -> frozenset[str]:
    if not cursor.match("lbrace"):
        raise cursor.fail("expected '{'", ParseErrorKind.BAD_STATE_SYNTAX)
    atoms: set[str] = set()
    if cursor.current.kind == "rbrace":
        cursor.advance()
        return frozenset()
    while True:
        token = cursor.current
        if token.kind != "ident":
            raise cursor.fail("expected an atom name", ParseErrorKind.BAD_STATE_SYNTAX)
        if token.text in RESERVED_WORDS:
            raise cursor.fail(
                f"reserved word {token.text!r} cannot be an atom",
                ParseErrorKind.RESERVED_ATOM,
            )
        atoms.add(token.text)
        cursor.advance()
        if cursor.match("comma"):
            continue
        if cursor.match("rbrace"):
            return frozenset(atoms)
        raise cursor.fail("expected ',' or '}'", ParseErrorKind.BAD_STATE_SYNTAX)


def print_trace(trace: LassoTrace) -> str:
    """Deterministic rendering with atoms sorted inside each state."""
    def state(s: frozenset[str]) -> str:
        return "{" + ",".join(sorted(s)) + "}"

    loop_text = " ; ".join(state(s) for s in trace.loop)
    if trace.prefix:
        prefix_text = " ; ".join(state(s) for s in trace.prefix)
        return f"{prefix_text} | {loop_text}"
    return f"| {loop_text}"
