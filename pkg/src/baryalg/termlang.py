"""Concrete syntax for terms.

Grammar (whitespace between tokens is ignored)::

    term   := leaf | "[" weight "]" "(" term "," term ")"
    leaf   := "v" DIGITS                       1-based generator index
    weight := DIGITS ["." DIGITS] | DIGITS "/" DIGITS

Weights must land strictly inside (0, 1) after rounding to the nearest
double. ``print_term`` emits the shortest decimal that reads back to the same
double, so ``parse(print_term(t)) == t`` exactly.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .baryterm import BaryTerm, Leaf, Node
from .errors import BarycentricError


class ErrorKind(str, enum.Enum):
    UNEXPECTED_TOKEN = "UnexpectedToken"
    WEIGHT_OUT_OF_RANGE = "WeightOutOfRange"
    MALFORMED_NUMBER = "MalformedNumber"
    UNBALANCED_PAREN = "UnbalancedParen"
    TRAILING_INPUT = "TrailingInput"


class SourceError(BarycentricError, ValueError):
    """A parse failure at a byte offset of the input."""

    def __init__(self, kind: ErrorKind, position: int, message: str):
        self.kind = ErrorKind(kind)
        self.position = position
        self.message = message
        super().__init__(f"{self.kind.value} at offset {position}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # one of "[", "]", "(", ")", ",", "leaf", "number", "end", "junk"
    text: str
    pos: int  # character offset


# digits, optionally followed by "." or "/" and whatever digits come next;
# a malformed tail like "1." or "3/" is caught when the number is converted
_NUMBER = re.compile(r"\d+(?:[./]\d*)?")
_LEAF = re.compile(r"v(\d*)")
_PUNCT = "[](),"


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _PUNCT:
            toks.append(Token(c, c, i))
            i += 1
        elif c == "v":
            m = _LEAF.match(text, i)
            toks.append(Token("leaf", m.group(0), i))
            i = m.end()
        elif c.isascii() and c.isdigit():
            m = _NUMBER.match(text, i)
            toks.append(Token("number", m.group(0), i))
            i = m.end()
        else:
            j = i + 1
            while j < n and not text[j].isspace() and text[j] not in _PUNCT:
                j += 1
            toks.append(Token("junk", text[i:j], i))
            i = j
    toks.append(Token("end", "", n))
    return toks


def _to_weight(tok: Token) -> float:
    s = tok.text
    try:
        if "/" in s:
            num, den = s.split("/")
            if not den:
                raise ValueError("missing denominator")
            if int(den) == 0:
                raise ZeroDivisionError
            exact = Fraction(int(num), int(den))
        else:
            if s.endswith("."):
                raise ValueError("missing digits after decimal point")
            exact = Fraction(s)
    except ZeroDivisionError:
        raise _Err(ErrorKind.MALFORMED_NUMBER, tok.pos, f"division by zero in {s!r}")
    except ValueError as exc:
        raise _Err(ErrorKind.MALFORMED_NUMBER, tok.pos, f"bad number {s!r}: {exc}")
    value = float(exact)
    if not (0 < exact < 1 and 0.0 < value < 1.0):
        raise _Err(ErrorKind.WEIGHT_OUT_OF_RANGE, tok.pos,
                   f"weight {s} is not strictly between 0 and 1")
    return value


class _Err(Exception):
    # positions are converted to byte offsets once, at the top level
    def __init__(self, kind, pos, message):
        self.kind, self.pos, self.message = kind, pos, message


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise _Err(ErrorKind.UNEXPECTED_TOKEN, tok.pos, f"expected {expected}, found {found}")

    def close(self, closer: str, opener: Token):
        tok = self.cur
        if tok.kind == closer:
            self.advance()
            return
        if tok.kind in ("end", ")", "]"):
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise _Err(ErrorKind.UNBALANCED_PAREN, tok.pos,
                       f"{opener.text!r} at offset {opener.pos} is closed by {found}")
        self.fail(repr(closer))

    def term(self) -> BaryTerm:
        tok = self.cur
        if tok.kind == "leaf":
            self.advance()
            digits = tok.text[1:]
            if not digits:
                raise _Err(ErrorKind.UNEXPECTED_TOKEN, tok.pos, "generator name needs an index, e.g. v1")
            if int(digits) == 0:
                raise _Err(ErrorKind.MALFORMED_NUMBER, tok.pos + 1, "generator indices start at 1")
            return Leaf(int(digits))
        if tok.kind == "[":
            opener = self.advance()
            if self.cur.kind != "number":
                self.fail("a weight")
            weight = _to_weight(self.advance())
            self.close("]", opener)
            if self.cur.kind != "(":
                self.fail("'('")
            paren = self.advance()
            left = self.term()
            if self.cur.kind != ",":
                if self.cur.kind in ("end", ")", "]"):
                    self.close(",", paren)
                self.fail("','")
            self.advance()
            right = self.term()
            self.close(")", paren)
            return Node(weight, left, right)
        self.fail("a term ('v<k>' or '[')")

    def parse(self) -> BaryTerm:
        t = self.term()
        if self.cur.kind != "end":
            raise _Err(ErrorKind.TRAILING_INPUT, self.cur.pos,
                       f"unexpected {self.cur.text!r} after a complete term")
        return t


def _byte_offset(text: str, char_pos: int) -> int:
    return len(text[:char_pos].encode("utf-8"))


def parse(text: str) -> BaryTerm:
    """Parse ``text`` into a term; raises :class:`SourceError` on bad input."""
    try:
        return _Parser(text).parse()
    except _Err as e:
        raise SourceError(e.kind, _byte_offset(text, e.pos), e.message) from None


def parse_weight(text: str) -> float:
    """Parse a standalone weight such as ``0.25`` or ``1/3``."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    toks = tokenize(stripped)
    try:
        if len(toks) != 2 or toks[0].kind != "number":
            raise _Err(ErrorKind.MALFORMED_NUMBER, 0, f"{text!r} is not a weight")
        return _to_weight(toks[0])
    except _Err as e:
        raise SourceError(e.kind, _byte_offset(text, lead + e.pos), e.message) from None


def format_weight(p: float) -> str:
    return np.format_float_positional(p, unique=True, trim="-")


def print_term(t: BaryTerm) -> str:
    """Canonical text of ``t``: no whitespace, shortest round-tripping weights."""
    if isinstance(t, Leaf):
        return f"v{t.index}"
    return f"[{format_weight(t.weight)}]({print_term(t.left)},{print_term(t.right)})"
