"""Expression grammar shared by the `rat` and `crn approx` commands.

Grammar: rational literals (`p`, `p/q`, exact decimals), `+`, `-`, `*`,
parentheses, unary minus, and named builtin calls `name(arg, ...)` whose
arguments are raw comma-separated strings interpreted by the builtin
itself (oracle specs and file paths are not rational tokens).  There is
no division operator; the `/` inside `3/4` belongs to the literal.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence, Union

from . import crn
from .errors import ParseError
from .rational import Rational, parse_rational

Node = Union[
    tuple,  # ("rat", Rational) | ("neg", Node) | ("add"|"sub"|"mul", Node, Node)
]

BuiltinMap = Mapping[str, Callable[[Sequence[str]], crn.CRN]]


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def expect(self, char: str) -> None:
        if not self.take(char):
            raise ParseError(f"expected {char!r} at position {self.pos} in expression")


def parse_expression(text: str) -> Node:
    cursor = _Cursor(text)
    node = _parse_sum(cursor)
    cursor.skip_ws()
    if cursor.pos != len(cursor.text):
        raise ParseError(f"trailing input at position {cursor.pos}: {text!r}")
    return node


def _parse_sum(cursor: _Cursor) -> Node:
    node = _parse_product(cursor)
    while True:
        ch = cursor.peek()
        if ch == "+":
            cursor.take("+")
            node = ("add", node, _parse_product(cursor))
        elif ch == "-":
            cursor.take("-")
            node = ("sub", node, _parse_product(cursor))
        else:
            return node


def _parse_product(cursor: _Cursor) -> Node:
    node = _parse_atom(cursor)
    while cursor.peek() == "*":
        cursor.take("*")
        node = ("mul", node, _parse_atom(cursor))
    return node


def _parse_atom(cursor: _Cursor) -> Node:
    ch = cursor.peek()
    if ch == "-":
        cursor.take("-")
        return ("neg", _parse_atom(cursor))
    if ch == "(":
        cursor.take("(")
        node = _parse_sum(cursor)
        cursor.expect(")")
        return node
    if ch.isdigit():
        return ("rat", _parse_literal(cursor))
    if ch.isalpha() or ch == "_":
        return _parse_call(cursor)
    raise ParseError(f"unexpected character {ch!r} at position {cursor.pos}")


def _parse_literal(cursor: _Cursor) -> Rational:
    text = cursor.text
    start = cursor.pos
    while cursor.pos < len(text) and text[cursor.pos].isdigit():
        cursor.pos += 1
    if cursor.pos < len(text) and text[cursor.pos] in "/.":
        mark = cursor.pos
        cursor.pos += 1
        digits = 0
        while cursor.pos < len(text) and text[cursor.pos].isdigit():
            cursor.pos += 1
            digits += 1
        if digits == 0:  # lone `/` or `.` belongs to something else
            cursor.pos = mark
    return parse_rational(text[start : cursor.pos])


def _parse_call(cursor: _Cursor) -> Node:
    text = cursor.text
    start = cursor.pos
    while cursor.pos < len(text) and (text[cursor.pos].isalnum() or text[cursor.pos] == "_"):
        cursor.pos += 1
    name = text[start : cursor.pos]
    cursor.expect("(")
    args: list[str] = []
    depth = 0
    arg_start = cursor.pos
    while True:
        if cursor.pos >= len(text):
            raise ParseError(f"unterminated call {name}(...)")
        ch = text[cursor.pos]
        if ch == "(":
            depth += 1
        elif ch == ")" and depth > 0:
            depth -= 1
        elif ch == ")":
            args.append(text[arg_start : cursor.pos].strip())
            cursor.pos += 1
            break
        elif ch == "," and depth == 0:
            args.append(text[arg_start : cursor.pos].strip())
            arg_start = cursor.pos + 1
        cursor.pos += 1
    args = [a for a in args if a]
    return ("call", name, args)


def eval_rational(node: Node) -> Rational:
    """Evaluate an expression containing no builtin calls, exactly."""
    kind = node[0]
    if kind == "rat":
        return node[1]
    if kind == "neg":
        return -eval_rational(node[1])
    if kind == "call":
        raise ParseError(f"{node[1]}(...) is not a rational expression")
    left = eval_rational(node[1])
    right = eval_rational(node[2])
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    return left * right


def eval_crn(node: Node, builtins: BuiltinMap) -> crn.CRN:
    """Evaluate an expression to a constructive real."""
    kind = node[0]
    if kind == "rat":
        return crn.from_rational(node[1])
    if kind == "neg":
        return crn.negate(eval_crn(node[1], builtins))
    if kind == "call":
        name, args = node[1], node[2]
        if name not in builtins:
            raise ParseError(f"unknown builtin {name!r}")
        return builtins[name](args)
    left = eval_crn(node[1], builtins)
    right = eval_crn(node[2], builtins)
    if kind == "add":
        return crn.add(left, right)
    if kind == "sub":
        return crn.sub(left, right)
    return crn.mul(left, right)
