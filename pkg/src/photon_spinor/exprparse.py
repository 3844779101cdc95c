"""Small arithmetic-expression language for medium profiles.

Grammar (precedence low to high, ``^`` right-associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"

Names are the coordinates ``t, x1, x2, x3`` and the constants ``pi`` and
``e``; functions are ``exp, sin, cos, sqrt``.  Nothing is passed to
``eval``: expressions compile to a tuple tree that is evaluated on floats,
numpy arrays or :class:`~photon_spinor.jets.Jet` objects alike.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .errors import ExpressionError
from .jets import Jet

__all__ = ["Expression", "parse_expression", "VARIABLES"]

VARIABLES = ("t", "x1", "x2", "x3")
_CONSTANTS = {"pi": math.pi, "e": math.e}
_FUNCTIONS = ("exp", "sin", "cos", "sqrt")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExpressionError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            want = repr(value) if value else "a token"
            raise ExpressionError(f"expected {want} at offset {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ExpressionError("empty expression")
        node = self.expr()
        if self.i != len(self.tokens):
            raise ExpressionError(f"trailing input at offset {self.peek()[2]} in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            inner = self.unary()
            return inner if op == "+" else ("neg", inner)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            return ("^", base, self.unary())
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return ("num", float(value))
        if kind == "name":
            if value in _FUNCTIONS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return ("call", value, arg)
            if value in _CONSTANTS:
                return ("num", _CONSTANTS[value])
            if value in VARIABLES:
                return ("var", value)
            raise ExpressionError(f"unknown name {value!r} at offset {pos} in {self.text!r}")
        if value == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ExpressionError(f"unexpected {value!r} at offset {pos} in {self.text!r}")


def _call(name: str, x):
    if isinstance(x, Jet):
        return getattr(x, name)()
    return getattr(np, name)(x)


def _evaluate(node, env: Mapping[str, Any]):
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "var":
        return env[node[1]]
    if tag == "neg":
        return -_evaluate(node[1], env)
    if tag == "call":
        return _call(node[1], _evaluate(node[2], env))
    a, b = _evaluate(node[1], env), _evaluate(node[2], env)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    if tag == "/":
        return a / b
    if isinstance(a, Jet) or isinstance(b, Jet):
        return (a if isinstance(a, Jet) else Jet.constant(np.asarray(a, dtype=float), b.order)) ** b
    return np.power(a, b)


def _uses(node, acc: set[str]) -> set[str]:
    if node[0] == "var":
        acc.add(node[1])
    for child in node[1:]:
        if isinstance(child, tuple):
            _uses(child, acc)
    return acc


@dataclass(frozen=True)
class Expression:
    """A parsed profile expression.

    Call it with keyword arguments ``t, x1, x2, x3`` (floats, arrays or
    jets).  Missing coordinates default to ``0.0``.
    """

    source: str
    tree: tuple

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(_uses(self.tree, set()))

    def __call__(self, **coords):
        unknown = set(coords) - set(VARIABLES)
        if unknown:
            raise ExpressionError(f"unknown coordinates {sorted(unknown)}")
        env = {v: coords.get(v, 0.0) for v in VARIABLES}
        with np.errstate(divide="raise", invalid="raise", over="raise", under="ignore"):
            try:
                return _evaluate(self.tree, env)
            except (FloatingPointError, ZeroDivisionError, OverflowError) as exc:
                raise ExpressionError(f"cannot evaluate {self.source!r}: {exc}") from None


def parse_expression(text: str) -> Expression:
    """Parse a profile expression string.

    Raises
    ------
    ExpressionError
        On any syntax error, with the offending offset.
    """
    if not isinstance(text, str):
        raise ExpressionError(f"expression must be a string, got {type(text).__name__}")
    return Expression(text, _Parser(text).parse())
