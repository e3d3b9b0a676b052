"""Tiny call-expression grammar shared by the CLI and the spec parsers.

Accepted syntax is a subset of Python expressions::

    expr    := NAME | NAME "(" [arg ("," arg)*] ")"
    arg     := value | NAME "=" value
    value   := expr | number | "(" value, ... ")" | "[" value, ... "]"
    number  := literal, optionally combined with + - * / ** (e.g. 1/3, -0.5)

so ``qlift(q=0.5, inner=kyfan_anti(k=2))``, ``poly(0, 1, 0, 1)`` and
``pow(1/3)`` all parse.  Parsing goes through :mod:`ast`; nothing is ever
evaluated by the interpreter.
"""
from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field

from .errors import ParameterError

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()
    kwargs: dict = field(default_factory=dict)


def _value(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _value(node.operand)
        if not isinstance(v, (int, float)):
            raise ParameterError("unary sign applied to a non-number")
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left, right = _value(node.left), _value(node.right)
        if not all(isinstance(v, (int, float)) for v in (left, right)):
            raise ParameterError("arithmetic is only allowed between numbers")
        try:
            return _BINOPS[type(node.op)](left, right)
        except ZeroDivisionError as exc:
            raise ParameterError("division by zero in expression") from exc
    if isinstance(node, (ast.Tuple, ast.List)):
        return tuple(_value(e) for e in node.elts)
    if isinstance(node, ast.Name):
        return Call(node.id)
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name):
            raise ParameterError("only simple names may be called")
        kwargs = {}
        for kw in node.keywords:
            if kw.arg is None:
                raise ParameterError("**kwargs are not supported")
            kwargs[kw.arg] = _value(kw.value)
        return Call(node.func.id, tuple(_value(a) for a in node.args), kwargs)
    raise ParameterError(f"unsupported syntax: {ast.dump(node)}")


def parse_expr(text: str):
    """Parse `text` into a :class:`Call` tree (or a bare number)."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParameterError(f"cannot parse {text!r}: {exc.msg}") from exc
    return _value(tree.body)


def parse_call(text: str) -> tuple[str, tuple, dict]:
    node = parse_expr(text)
    if not isinstance(node, Call):
        raise ParameterError(f"expected a name or call, got {text!r}")
    return node.name, node.args, node.kwargs


def format_number(x) -> str:
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)
