from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abhyankar.errors import ParseError, UnknownVariable
from abhyankar.expr import BinOp, Neg, Num, Pow, Var, parse_expression, parse_form, parse_function, pretty
from abhyankar.forms import to_coordinate_coefficient
from abhyankar.funfield import RationalFunction, VariableContext

CTX = VariableContext(["x", "y", "t"])
x, y, t = (RationalFunction.var(CTX, v) for v in ("x", "y", "t"))


def test_parse_examples():
    ast = parse_expression("x^3 + x*y^2 + y^4")
    assert ast == BinOp(
        "+",
        BinOp("+", Pow(Var("x"), Fraction(3)), BinOp("*", Var("x"), Pow(Var("y"), Fraction(2)))),
        Pow(Var("y"), Fraction(4)),
    )
    assert parse_expression("1/(1 - t)") == BinOp("/", Num(Fraction(1)), BinOp("-", Num(Fraction(1)), Var("t")))
    assert parse_function("x^(1/2)*x^(1/2)", CTX) == x


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than * and /
    assert parse_expression("-x^2") == Neg(Pow(Var("x"), Fraction(2)))
    assert parse_function("-x^2", CTX) == -(x**2)
    assert parse_function("2*-x", CTX) == -2 * x
    assert parse_function("x - y - t", CTX) == x - y - t
    assert parse_function("x / y / t", CTX) == x / (y * t)
    assert parse_function("x^(-2)", CTX) == 1 / x**2
    assert parse_function("3/4*x", CTX) == Fraction(3, 4) * x


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("x + ", 1, 5),
        ("x +* y", 1, 4),
        ("x^y", 1, 3),
        ("(x + y", 1, 7),
        ("x\n  + $", 2, 5),
        ("x^(1/0)", 1, 6),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_function("x + w", CTX)


def test_parse_form():
    om = parse_form("(1/t) d(t) ^ d(x) ^ d(y)", CTX)
    assert om.coefficient == 1 / t
    assert om.basis == (t, x, y)
    om = parse_form("d(x*y) ^ d(y) ^ d(t)", CTX)
    assert to_coordinate_coefficient(om) == y
    om = parse_form("1 d(x)^d(y)^d(t)", CTX)
    assert om.coefficient == 1
    with pytest.raises(ParseError):
        parse_form("x + y", CTX)


names = st.sampled_from(["x", "y", "t", "x_1", "z9"])
leaves = st.one_of(
    names.map(Var),
    st.integers(0, 30).map(lambda n: Num(Fraction(n))),
)
exponents = st.one_of(
    st.integers(0, 5).map(Fraction),
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
)


def trees(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, exponents),
    )


expressions = st.recursive(leaves, trees, max_leaves=12)


@settings(max_examples=300)
@given(expressions)
def test_pretty_round_trip(ast):
    assert parse_expression(pretty(ast)) == ast


def test_pretty_minimal_parentheses():
    assert pretty(parse_expression("(x + y) * t")) == "(x + y) * t"
    assert pretty(parse_expression("x + (y * t)")) == "x + y * t"
    assert pretty(parse_expression("x - (y - t)")) == "x - (y - t)"
    assert pretty(parse_expression("(-x)^2")) == "(-x)^2"
    assert pretty(parse_expression("x^(1/2)")) == "x^(1/2)"
