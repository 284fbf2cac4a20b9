"""Tokenizer and arithmetic-expression parser shared by polynomial input and the DSL."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ScriptSyntaxError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*|//[^\n]*)
  | (?P<str>"[^"\n]*")
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\[\[|\]\]|[-+*/^(),;=<>\[\]{}:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "str", "op", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# Expression AST.  Spans are excluded from equality so re-parsed text compares equal.

@dataclass(frozen=True)
class Num:
    value: int
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: object
    right: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: tuple = field(default=None, compare=False)


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "name") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if not self.at(text):
            found = t.text or "end of input"
            raise ScriptSyntaxError(f"expected {text!r}, found {found!r}", t.line, t.col)
        self.i += 1
        return t

    def expect_kind(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            found = t.text or "end of input"
            raise ScriptSyntaxError(f"expected {kind}, found {found!r}", t.line, t.col)
        self.i += 1
        return t


def parse_expr(ts: TokenStream):
    """expr := term (('+'|'-') term)*"""
    left = _parse_term(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next()
        right = _parse_term(ts)
        left = BinOp(op.text, left, right, (op.line, op.col))
    return left


def _parse_term(ts: TokenStream):
    left = _parse_unary(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next()
        right = _parse_unary(ts)
        left = BinOp(op.text, left, right, (op.line, op.col))
    return left


def _parse_unary(ts: TokenStream):
    if ts.at("-"):
        t = ts.next()
        return Neg(_parse_unary(ts), (t.line, t.col))
    if ts.at("+"):
        ts.next()
        return _parse_unary(ts)
    return _parse_power(ts)


def _parse_power(ts: TokenStream):
    base = _parse_atom(ts)
    while ts.at("^"):
        t = ts.next()
        e = ts.expect_kind("num")
        base = Pow(base, int(e.text), (t.line, t.col))
    return base


def _parse_atom(ts: TokenStream):
    t = ts.peek()
    if t.kind == "num":
        ts.next()
        return Num(int(t.text), (t.line, t.col))
    if t.kind == "name":
        ts.next()
        return Var(t.text, (t.line, t.col))
    if ts.accept("("):
        e = parse_expr(ts)
        ts.expect(")")
        return e
    raise ScriptSyntaxError(f"expected an expression, found {t.text or 'end of input'!r}", t.line, t.col)


def format_expr(e) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{format_expr(e.arg)})"
    if isinstance(e, Pow):
        return f"{format_expr(e.base)}^{e.exp}"
    return f"({format_expr(e.left)}{e.op}{format_expr(e.right)})"
