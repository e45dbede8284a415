"""
Tokenizer and recursive-descent helpers shared by every text format.

The grammars are tiny (scalar expressions in q, q1, q2; generator words; braid
words; E-expressions; convex paths), so they share one tokenizer and a cursor
class that tracks positions for error messages.
"""

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>->|[-+*/^(),\[\]:{}]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Cursor:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset=0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("op", "name") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def fail(self, message: str, expected=()):
        raise ParseError(message, self.text, self.peek().pos, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"unexpected {self.peek().text or 'end of input'!r}", (repr(text),))
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"unexpected {tok.text or 'end of input'!r}", ("integer",))
        self.next()
        return int(tok.text)

    def signed_int(self) -> int:
        sign = 1
        while self.at("-") or self.at("+"):
            if self.next().text == "-":
                sign = -sign
        return sign * self.expect_int()

    def expect_end(self):
        if self.peek().kind != "end":
            self.fail(f"trailing input {self.peek().text!r}", ("end of input",))


def parse_scalar(text: str, variables: dict, from_int, divide=None):
    """
    Evaluate a scalar expression such as ``(1 - q2)*q1^-1 / (1 + q1*q2)``.

    `variables` maps names to ring values, `from_int` lifts integers, and
    `divide(a, b)` implements ``/`` (omitted: division is a parse error).
    """
    cur = Cursor(text)
    value = _expr(cur, variables, from_int, divide)
    cur.expect_end()
    return value


def parse_scalar_at(cur: Cursor, variables: dict, from_int, divide=None):
    return _expr(cur, variables, from_int, divide)


def _expr(cur, variables, from_int, divide):
    value = _term(cur, variables, from_int, divide)
    while cur.at("+") or cur.at("-"):
        op = cur.next().text
        rhs = _term(cur, variables, from_int, divide)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(cur, variables, from_int, divide):
    value = _unary(cur, variables, from_int, divide)
    while cur.at("*") or cur.at("/"):
        op = cur.next()
        rhs = _unary(cur, variables, from_int, divide)
        if op.text == "*":
            value = value * rhs
        elif divide is None:
            raise ParseError("division is not allowed here", cur.text, op.pos)
        else:
            value = divide(value, rhs)
    return value


def _unary(cur, variables, from_int, divide):
    if cur.accept("-"):
        return -_unary(cur, variables, from_int, divide)
    if cur.accept("+"):
        return _unary(cur, variables, from_int, divide)
    return _power(cur, variables, from_int, divide)


def _power(cur, variables, from_int, divide):
    base = _atom(cur, variables, from_int, divide)
    if cur.accept("^"):
        return base ** cur.signed_int()
    return base


def _atom(cur, variables, from_int, divide):
    tok = cur.peek()
    if tok.kind == "int":
        cur.next()
        return from_int(int(tok.text))
    if tok.kind == "name":
        if tok.text not in variables:
            cur.fail(f"unknown symbol {tok.text!r}", tuple(sorted(variables)))
        cur.next()
        return variables[tok.text]
    if cur.accept("("):
        value = _expr(cur, variables, from_int, divide)
        cur.expect(")")
        return value
    cur.fail(f"unexpected {tok.text or 'end of input'!r}", ("integer", "symbol", "'('"))
