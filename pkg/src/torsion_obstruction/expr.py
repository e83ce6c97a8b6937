"""Rational functions in one variable ``x`` as small expression trees.

Formulas are written in Python arithmetic syntax (``+ - * / **``, integer
constants, the name ``x``) and parsed with :mod:`ast` into nested tuples::

    ("num", 27)  ("x",)  ("neg", e)  ("add" | "sub" | "mul" | "div", l, r)  ("pow", e, k)

Evaluation coerces every constant into the base of ``x`` first, so the same tree
evaluates over Q or, after reduction, over any F_q.  A vanishing denominator is
reported rather than skipped.
"""

from __future__ import annotations

import ast

from .errors import CuspidalOrBadPoint, ModelConfigError

_BINOPS = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}
_SYMBOLS = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


def parse(text: str) -> tuple:
    try:
        node = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise ModelConfigError(f"bad formula {text!r}: {exc}") from exc
    return _convert(node)


def _convert(node) -> tuple:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return ("num", node.value)
    if isinstance(node, ast.Name) and node.id == "x":
        return ("x",)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return ("neg", _convert(node.operand))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _convert(node.operand)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if not (isinstance(exp, ast.Constant) and type(exp.value) is int and exp.value >= 0):
                raise ModelConfigError("exponents must be non-negative integer literals")
            return ("pow", _convert(node.left), exp.value)
        op = _BINOPS.get(type(node.op))
        if op:
            return (op, _convert(node.left), _convert(node.right))
    raise ModelConfigError(f"unsupported syntax in formula: {ast.dump(node)}")


def evaluate(tree: tuple, x):
    """Evaluate at ``x``; constants are coerced via ``type(x)`` arithmetic.

    Raises CuspidalOrBadPoint when any denominator subexpression is zero.
    """
    tag = tree[0]
    if tag == "num":
        return x * 0 + tree[1]
    if tag == "x":
        return x
    if tag == "neg":
        return -evaluate(tree[1], x)
    if tag == "pow":
        return evaluate(tree[1], x) ** tree[2]
    left = evaluate(tree[1], x)
    right = evaluate(tree[2], x)
    if tag == "add":
        return left + right
    if tag == "sub":
        return left - right
    if tag == "mul":
        return left * right
    if tag == "div":
        if right == 0:
            raise CuspidalOrBadPoint(f"denominator {to_text(tree[2])} vanishes at x = {x}")
        return left / right
    raise ModelConfigError(f"unknown node {tag!r}")


def to_text(tree: tuple) -> str:
    tag = tree[0]
    if tag == "num":
        return str(tree[1])
    if tag == "x":
        return "x"
    if tag == "neg":
        return f"-({to_text(tree[1])})"
    if tag == "pow":
        return f"({to_text(tree[1])})**{tree[2]}"
    return f"({to_text(tree[1])} {_SYMBOLS[tag]} {to_text(tree[2])})"
