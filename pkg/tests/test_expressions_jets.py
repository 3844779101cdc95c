import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_spinor.errors import ExpressionError
from photon_spinor.exprparse import parse_expression
from photon_spinor.jets import variables


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1 + 2 * 3", 7.0),
        ("2 ^ 3 ^ 2", 512.0),
        ("-2 ^ 2", -4.0),
        ("(1 + 2) * 3", 9.0),
        ("sqrt(16) + exp(0) + sin(0) + cos(0)", 6.0),
        ("pi", math.pi),
        ("e", math.e),
        ("x1 * 2 + t", 2 * 0.5 + 0.25),
    ],
)
def test_expression_values(text, expected):
    assert parse_expression(text)(t=0.25, x1=0.5) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("text", ["", "1 +", "(1", "foo(2)", "1 2", "x4", "2 ** 3", "sin 2"])
def test_malformed_expressions(text):
    with pytest.raises(ExpressionError):
        parse_expression(text)


def test_evaluation_errors_are_expression_errors():
    with pytest.raises(ExpressionError):
        parse_expression("1 / x1")(x1=0.0)


@settings(max_examples=60, deadline=None)
@given(a=st.floats(-10, 10), b=st.floats(0.1, 10), c=st.floats(-3, 3))
def test_expression_agrees_with_python_arithmetic(a, b, c):
    expr = parse_expression(f"({a!r}) * x1 / ({b!r}) - ({c!r}) ^ 2 + x2")
    assert expr(x1=1.5, x2=-0.5) == pytest.approx(a * 1.5 / b - c**2 - 0.5, rel=1e-13, abs=1e-13)


def test_variables_reported():
    assert parse_expression("t + x3 * pi").variables == {"t", "x3"}


def test_jet_derivatives_match_analytic():
    pts = np.array([[0.2, 0.5, -0.3, 1.1], [0.0, 1.0, 2.0, -1.0]])
    expr = parse_expression("exp(t) * sin(x1) * sqrt(2 + x2 ^ 2) / (1 + x3 ^ 2)")
    jet = expr(**dict(zip(("t", "x1", "x2", "x3"), variables(pts, 2))))
    t, x1, x2, x3 = pts.T
    f = np.exp(t) * np.sin(x1) * np.sqrt(2 + x2**2) / (1 + x3**2)
    assert np.allclose(jet.c0, f, rtol=1e-14)
    assert np.allclose(jet.c1[0], f, rtol=1e-14)
    assert np.allclose(jet.c1[1], f / np.sin(x1) * np.cos(x1), rtol=1e-13)
    assert np.allclose(jet.c1[2], f * x2 / (2 + x2**2), rtol=1e-13)
    assert np.allclose(jet.c2[1, 1], -f, rtol=1e-13)
    assert np.allclose(jet.c2[0, 1], jet.c2[1, 0], rtol=1e-14)
    dx3 = -2 * x3 / (1 + x3**2)
    assert np.allclose(jet.c1[3], f * dx3, rtol=1e-13)


def test_jet_second_derivative_vs_complex_free_finite_difference():
    expr = parse_expression("cos(x1 * x2) + t ^ 3")
    x0 = np.array([0.7, 0.3, -0.9, 0.0])
    jet = expr(**dict(zip(("t", "x1", "x2", "x3"), variables(x0, 2))))
    h = 1e-4

    def f(x):
        return math.cos(x[1] * x[2]) + x[0] ** 3

    e1, e2 = np.eye(4)[1], np.eye(4)[2]
    mixed = (f(x0 + h * e1 + h * e2) - f(x0 + h * e1 - h * e2) - f(x0 - h * e1 + h * e2) + f(x0 - h * e1 - h * e2)) / (4 * h * h)
    assert jet.c2[1, 2] == pytest.approx(mixed, rel=1e-6)
