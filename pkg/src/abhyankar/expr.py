"""Expression and form literals for the command line.

Grammar (precedence from tight to loose: ``^``, unary ``-``, ``* /``, ``+ -``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)*
    exponent:= INT | '(' ['-'] INT ['/' INT] ')'
    atom    := INT | NAME | '(' expr ')'

A form literal is ``COEFF d(EXPR) ^ d(EXPR) ^ ...``; the coefficient may be
omitted and then defaults to 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import ParseError, UnknownVariable
from .funfield import Polynomial, RationalFunction, VariableContext, rf_pow


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction


Node = Union[Num, Var, Neg, BinOp, Pow]

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, tokens: list[Token], known: frozenset[str] | None):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.known = known

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        line, col = _line_col(self.text, tok.pos)
        return ParseError(msg, line, col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        while self.accept("^"):
            node = Pow(node, self.exponent())
        return node

    def integer(self) -> int:
        if self.tok.kind != "num":
            raise self.error("expected an integer literal")
        v = int(self.tok.text)
        self.i += 1
        return v

    def exponent(self) -> Fraction:
        if self.tok.kind == "num":
            return Fraction(self.integer())
        if not self.accept("("):
            raise self.error("exponent must be an integer or a parenthesized rational literal")
        sign = -1 if self.accept("-") else 1
        p = self.integer()
        q = 1
        if self.accept("/"):
            tok = self.tok
            q = self.integer()
            if q == 0:
                raise self.error("zero denominator in exponent", tok)
        self.expect(")")
        return Fraction(sign * p, q)

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if tok.kind == "name":
            if self.known is not None and tok.text not in self.known:
                line, col = _line_col(self.text, tok.pos)
                raise UnknownVariable(f"unknown variable {tok.text!r} at line {line}, column {col}")
            self.i += 1
            return Var(tok.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def _known(variables) -> frozenset[str] | None:
    if variables is None:
        return None
    return frozenset(variables.names if isinstance(variables, VariableContext) else variables)


def parse_expression(text: str, variables: VariableContext | Iterable[str] | None = None) -> Node:
    p = _Parser(text, tokenize(text), _known(variables))
    node = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return node


# -- printing -------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _exp_text(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return f"({e})"


def pretty(node: Node) -> str:
    """Minimal-parenthesis rendering that reparses to the same tree."""
    if isinstance(node, Num):
        v = node.value
        return str(v) if v.denominator == 1 and v >= 0 else f"({v})"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = pretty(node.operand)
        return f"-{inner}" if _prec(node.operand) >= 3 else f"-({inner})"
    if isinstance(node, Pow):
        base = pretty(node.base)
        if _prec(node.base) < 4:
            base = f"({base})"
        return f"{base}^{_exp_text(node.exponent)}"
    p = _PREC[node.op]
    left = pretty(node.left)
    if _prec(node.left) < p:
        left = f"({left})"
    right = pretty(node.right)
    # left-associative: a same-precedence right operand needs parentheses
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- evaluation -----------------------------------------------------------------

def evaluate(node: Node, ctx: VariableContext) -> RationalFunction:
    if isinstance(node, Num):
        return RationalFunction.constant(ctx, node.value)
    if isinstance(node, Var):
        if node.name not in ctx:
            raise UnknownVariable(f"unknown variable {node.name!r}")
        return RationalFunction(Polynomial.var(ctx, node.name))
    if isinstance(node, Neg):
        return -evaluate(node.operand, ctx)
    if isinstance(node, Pow):
        return rf_pow(evaluate(node.base, ctx), node.exponent)
    a, b = evaluate(node.left, ctx), evaluate(node.right, ctx)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b


def parse_function(text: str, ctx: VariableContext) -> RationalFunction:
    return evaluate(parse_expression(text, ctx), ctx)


def parse_form(text: str, ctx: VariableContext):
    """Parse ``COEFF d(EXPR) ^ d(EXPR) ...`` into a :class:`~abhyankar.forms.TopForm`."""
    from .forms import TopForm

    tokens = tokenize(text)
    start = next(
        (i for i, t in enumerate(tokens[:-1])
         if t.kind == "name" and t.text == "d" and tokens[i + 1].kind == "op" and tokens[i + 1].text == "("),
        None,
    )
    if start is None:
        line, col = _line_col(text, len(text))
        raise ParseError("form literal has no d(...) factor", line, col)
    known = _known(ctx)
    if start == 0:
        coeff = RationalFunction.constant(ctx, 1)
    else:
        p = _Parser(text, tokens[:start] + [Token("end", "", tokens[start].pos)], known)
        node = p.expr()
        if p.tok.kind != "end":
            raise p.error(f"unexpected {p.tok.text!r}")
        coeff = evaluate(node, ctx)
    p = _Parser(text, tokens, known)
    p.i = start
    basis = []
    while True:
        tok = p.tok
        if not (tok.kind == "name" and tok.text == "d"):
            raise p.error("expected d(...)")
        p.i += 1
        p.expect("(")
        basis.append(evaluate(p.expr(), ctx))
        p.expect(")")
        if p.tok.kind == "end":
            break
        p.expect("^")
    return TopForm(coeff, tuple(basis), ctx)
