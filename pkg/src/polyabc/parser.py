"""Surface syntax for polynomials in ``t``.

Grammar (whitespace between tokens is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natlit)?
    base   := intlit | intlit '/' intlit | 't' | '(' expr ')'

Parsing produces a small field-independent AST; :func:`evaluate` maps it
into a concrete field, which is where out-of-field literals are caught.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from polyabc.errors import DivisionByZero, LiteralOutOfField, PolySyntaxError
from polyabc.field import FieldDesc
from polyabc.poly import Poly

MAX_EXPONENT = 10_000


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "PolyExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    lhs: "PolyExpr"
    rhs: "PolyExpr"


@dataclass(frozen=True)
class Pow:
    base: "PolyExpr"
    exponent: int


PolyExpr = Union[Num, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only whitespace left
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch not in "t+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", m.start(2))
            tokens.append((ch, ch, m.start(2)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.tokens[self.i]
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise PolySyntaxError(f"expected {expected}, found {what}", tok[2])

    def expr(self) -> PolyExpr:
        if self.peek() == "-":
            self.i += 1
            node = Neg(self.term())
        else:
            node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> PolyExpr:
        node = self.factor()
        while self.peek() == "*":
            self.i += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> PolyExpr:
        node = self.base()
        if self.peek() == "^":
            self.i += 1
            if self.peek() != "int":
                self.fail("a nonnegative integer exponent")
            _, text, pos = self.take("int")
            n = int(text)
            if n > MAX_EXPONENT:
                raise PolySyntaxError(f"exponent {n} exceeds {MAX_EXPONENT}", pos)
            node = Pow(node, n)
        return node

    def base(self) -> PolyExpr:
        kind = self.peek()
        if kind == "int":
            num = int(self.take("int")[1])
            if self.peek() == "/":
                self.i += 1
                if self.peek() != "int":
                    self.fail("an integer denominator")
                _, text, pos = self.take("int")
                den = int(text)
                if den == 0:
                    raise LiteralOutOfField(f"zero denominator at offset {pos}")
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if kind == "t":
            self.i += 1
            return Var()
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        self.fail("an integer, 't' or '('")


def parse_expr(text: str) -> PolyExpr:
    parser = _Parser(text)
    node = parser.expr()
    if parser.peek() != "eof":
        parser.fail("an operator or end of input")
    return node


def evaluate(node: PolyExpr, field: FieldDesc) -> Poly:
    if isinstance(node, Num):
        try:
            return Poly.const(field, node.value)
        except DivisionByZero as exc:
            raise LiteralOutOfField(f"literal {node.value} is not defined in {field}") from exc
    if isinstance(node, Var):
        return Poly.t(field)
    if isinstance(node, Neg):
        return -evaluate(node.arg, field)
    if isinstance(node, Pow):
        return evaluate(node.base, field) ** node.exponent
    lhs, rhs = evaluate(node.lhs, field), evaluate(node.rhs, field)
    if node.op == "+":
        return lhs + rhs
    if node.op == "-":
        return lhs - rhs
    return lhs * rhs


def parse_poly(text: str, field: FieldDesc) -> Poly:
    return evaluate(parse_expr(text), field)


def format_poly(p: Poly) -> str:
    """Render in descending degree so that ``parse_poly`` inverts it."""
    if not p.coeffs:
        return "0"
    field = p.field
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        negative = not field.modulus and c < 0
        mag = field.format(-c if negative else c)
        if i == 0:
            body = mag
        else:
            var = "t" if i == 1 else f"t^{i}"
            body = var if mag == "1" else f"{mag}*{var}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)
