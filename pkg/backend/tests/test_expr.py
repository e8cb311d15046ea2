"""
Tests for coefficient expressions
"""

import math

import numpy as np
import pytest

from charperiodic.core.exceptions import (
    ExpressionDomainError,
    ExpressionError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)
from charperiodic.modules.expr import constant, evaluate, evaluate_array, parse, substitute

PI = math.pi

# (source, x, t, expected)
CASES = [
    ("1+2*3", 0.0, 0.0, 7.0),
    ("(1+2)*3", 0.0, 0.0, 9.0),
    ("10-4-3", 0.0, 0.0, 3.0),
    ("8/4/2", 0.0, 0.0, 1.0),
    ("2*3/4", 0.0, 0.0, 1.5),
    ("2^3^1", 0.0, 0.0, 8.0),
    ("2^3^2", 0.0, 0.0, 512.0),
    ("(2^3)^2", 0.0, 0.0, 64.0),
    ("-2^2", 0.0, 0.0, -4.0),
    ("(-2)^2", 0.0, 0.0, 4.0),
    ("2^-1", 0.0, 0.0, 0.5),
    ("--3", 0.0, 0.0, 3.0),
    ("-3*-2", 0.0, 0.0, 6.0),
    ("1 - -1", 0.0, 0.0, 2.0),
    ("4*-x", 0.5, 0.0, -2.0),
    ("x + sin(t)", 0.5, 0.0, 0.5),
    ("exp(0) - cos(2*pi)", 0.3, 0.7, 0.0),
    ("-1", 0.3, 1.7, -1.0),
    ("t", 0.0, 2 * PI, 2 * PI),
    ("x", 0.25, 3.0, 0.25),
    ("pi", 0.0, 0.0, PI),
    ("2*pi", 0.0, 0.0, 2 * PI),
    ("1.5e2", 0.0, 0.0, 150.0),
    (".5", 0.0, 0.0, 0.5),
    ("3.", 0.0, 0.0, 3.0),
    ("2.5E-1", 0.0, 0.0, 0.25),
    ("  1 +\t2 ", 0.0, 0.0, 3.0),
    ("abs(-2.5)", 0.0, 0.0, 2.5),
    ("sqrt(16)", 0.0, 0.0, 4.0),
    ("log(exp(2))", 0.0, 0.0, 2.0),
    ("sin(pi/2)", 0.0, 0.0, 1.0),
    ("cos(0)", 0.0, 0.0, 1.0),
    ("x^2 + 2*x + 1", 1.0, 0.0, 4.0),
    ("(x - 1)*(x + 1)", 3.0, 0.0, 8.0),
    ("1/(1+x)", 1.0, 0.0, 0.5),
    ("x*t", 2.0, 3.0, 6.0),
    ("t - x", 1.0, 3.0, 2.0),
    ("sin(t - x)", 1.0, 1.0, 0.0),
    ("(2 - 3*x/2) * sin(t - x)", 0.0, PI / 2, 2.0),
    ("3/2", 0.0, 0.0, 1.5),
    ("1/2", 0.0, 0.0, 0.5),
    ("-1 + 0.1*sin(t)", 0.0, PI / 2, -0.9),
    ("0.5 + 0.1*sin(t)", 0.0, 0.0, 0.5),
    ("sin(t)^2 + cos(t)^2", 0.0, 1.234, 1.0),
    ("exp(-2*x)", 0.5, 0.0, math.exp(-1.0)),
    ("2^x", 3.0, 0.0, 8.0),
    ("x^0.5", 4.0, 0.0, 2.0),
    ("((((x))))", 0.75, 0.0, 0.75),
    ("1 - 2 + 3 - 4", 0.0, 0.0, -2.0),
    ("2*3^2", 0.0, 0.0, 18.0),
    ("-x^2", 3.0, 0.0, -9.0),
]


@pytest.mark.parametrize("source,x,t,expected", CASES)
def test_evaluation_table(source, x, t, expected):
    """Precedence, associativity and functions on a table of cases"""
    assert evaluate(parse(source), x, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("source", [case[0] for case in CASES])
def test_round_trip_text(source, rng):
    """Printing and re-parsing keeps the value at random points"""
    expr = parse(source)
    again = parse(expr.to_text())
    xs = rng.uniform(0.1, 4.0, 100)
    ts = rng.uniform(-10.0, 10.0, 100)
    np.testing.assert_allclose(evaluate_array(again, xs, ts), evaluate_array(expr, xs, ts),
                               rtol=0, atol=1e-12)


def test_power_is_right_associative():
    """2^3^2 is 2^(3^2)"""
    assert parse("2^3^2").to_text() == parse("2^(3^2)").to_text()


def test_empty_source_is_a_syntax_error():
    """Empty input reports offset 0"""
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("   ")
    assert info.value.offset == 0


@pytest.mark.parametrize("source", ["1 +", "2x", "(1+2", "1 2", "*3", "sin()", "x ++ ", "1,2"])
def test_malformed_input(source):
    """Malformed input raises with an offset inside the source"""
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(source)
    assert 0 <= info.value.offset < len(source.encode("utf-8"))


def test_unknown_identifier_is_named():
    """Identifiers outside the whitelist are rejected by name"""
    with pytest.raises(UnknownIdentifierError) as info:
        parse("1 + y")
    assert info.value.name == "y"
    assert info.value.offset == 4

    with pytest.raises(UnknownIdentifierError) as info:
        parse("tan(x)")
    assert info.value.name == "tan"


def test_expression_errors_are_value_errors():
    """Callers may catch ValueError"""
    with pytest.raises(ValueError):
        parse("1 +")
    assert issubclass(ExpressionSyntaxError, ExpressionError)


@pytest.mark.parametrize(
    "source,x,t",
    [("1/x", 0.0, 0.0), ("log(x)", 0.0, 1.0), ("sqrt(x - 1)", 0.0, 0.0), ("(-1)^0.5", 0.0, 0.0),
     ("exp(1000*x)", 1.0, 0.0)],
)
def test_domain_errors(source, x, t):
    """Singular evaluations raise instead of returning inf or nan"""
    with pytest.raises(ExpressionDomainError):
        evaluate(parse(source), x, t)


def test_vectorized_evaluation_broadcasts():
    """x and t broadcast against each other"""
    expr = parse("x + t")
    values = evaluate_array(expr, np.array([[0.0], [1.0]]), np.array([0.0, 1.0, 2.0]))
    assert values.shape == (2, 3)
    np.testing.assert_array_equal(values, [[0, 1, 2], [1, 2, 3]])


def test_evaluation_is_deterministic():
    """Identical inputs give identical outputs"""
    expr = parse("sin(3*t) * exp(-x) + x^3")
    assert evaluate(expr, 0.37, 2.1) == evaluate(expr, 0.37, 2.1)


def test_substitute_shifts_a_variable():
    """substitute replaces variables by expressions"""
    expr = parse("sin(t) * x")
    shifted = substitute(expr, t=parse("t") + 1.0, x=constant(2.0))
    assert evaluate(shifted, 0.3, 0.5) == pytest.approx(2.0 * math.sin(1.5))
    assert shifted.variables() == frozenset({"t"})


def test_arithmetic_builds_expressions():
    """Operators on expressions combine trees without re-parsing"""
    expr = 2 * parse("x") - parse("t") / 4 + 1
    assert evaluate(expr, 0.5, 2.0) == pytest.approx(1.5)
    assert evaluate(-expr, 0.5, 2.0) == pytest.approx(-1.5)


def test_zero_constant():
    """Only literal zeros report is_zero"""
    assert parse("0").is_zero
    assert constant(0.0).is_zero
    assert not parse("x - x").is_zero
