"""Recursive-descent parser for operator expressions.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)?
    atom   := generator | 'comm' '(' expr ',' expr ')' | 'i' | int
            | param | '(' expr ')'

Generators are ``x1 x2 p1 p2 tx1 tx2 tp1 tp2 a1 a2 a1d a2d``; params are
``hbar eta theta mu omega xi sigma``. Division is only by scalars, so a
rational literal ``3/4`` parses as ``3 / 4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .algebra import GeneratorKind, NCPolynomial, commutator, expand_generator, substitute
from .coeffs import CoeffField, DomainError

GENERATORS = {k.value: k for k in GeneratorKind}
PARAMS = ("hbar", "eta", "theta", "mu", "omega", "xi", "sigma")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),=]))")


class ParseError(ValueError):
    """Syntax error at ``position`` (0-based) with the expected-token set."""

    def __init__(self, message: str, text: str, position: int, expected=()):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        super().__init__(message)

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^ {self}"


class UnknownIdentifier(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", text, at)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(
            f"unexpected {found}; expected one of: {', '.join(expected)}", self.text, t.pos, expected
        )

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            self.fail([repr(op)])

    def parse(self) -> NCPolynomial:
        out = self.expr()
        if self.tok.kind != "eof":
            self.fail(["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return out

    def expr(self) -> NCPolynomial:
        out = self.term()
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> NCPolynomial:
        out = self.unary()
        while True:
            if self.accept("*"):
                out = out * self.unary()
            elif self.accept("/"):
                pos = self.tok.pos
                den = self.unary()
                if not den.is_scalar() or den.is_zero():
                    raise ParseError("division only by a nonzero scalar", self.text, pos)
                try:
                    out = out / den.constant()
                except (ZeroDivisionError, DomainError) as exc:
                    raise ParseError(f"division by zero scalar: {exc}", self.text, pos) from exc
            else:
                return out

    def unary(self) -> NCPolynomial:
        if self.accept("-"):
            return -self.unary()
        return self.factor()

    def factor(self) -> NCPolynomial:
        base = self.atom()
        if self.accept("^"):
            if self.tok.kind != "int":
                self.fail(["unsigned integer"])
            n = int(self.tok.text)
            self.i += 1
            base = base**n
        return base

    def atom(self) -> NCPolynomial:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return NCPolynomial.scalar(int(t.text))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "name":
            self.i += 1
            if t.text == "comm":
                self.expect("(")
                left = self.expr()
                self.expect(",")
                right = self.expr()
                self.expect(")")
                return commutator(left, right)
            if t.text == "i":
                return NCPolynomial.scalar(CoeffField.const(0, 1))
            if t.text in GENERATORS:
                return expand_generator(GENERATORS[t.text])
            if t.text in PARAMS:
                return NCPolynomial.scalar(CoeffField.symbol(t.text))
            raise UnknownIdentifier(f"unknown identifier {t.text!r}", self.text, t.pos)
        self.fail(["generator", "parameter", "integer", "'i'", "'comm('", "'('"])


def parse_operator_expression(text: str, bindings: Mapping[str, object] | None = None) -> NCPolynomial:
    """Parse, expand and normal-order ``text``; optionally bind parameters."""
    poly = _Parser(text).parse()
    return substitute(poly, bindings) if bindings else poly


def parse_binding(text: str) -> tuple[str, CoeffField]:
    """Parse ``name=expr`` where ``expr`` is a scalar expression."""
    name, sep, rhs = text.partition("=")
    name = name.strip()
    if not sep or name not in PARAMS:
        raise ParseError(f"binding must look like <param>=<expr>, got {text!r}", text, 0, PARAMS)
    value = _Parser(rhs).parse()
    if not value.is_scalar():
        raise ParseError("binding value must be a scalar expression", text, len(name) + 1)
    return name, value.constant()
