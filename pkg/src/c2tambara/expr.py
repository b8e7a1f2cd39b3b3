"""Expression parsing, level inference and evaluation for the CLI.

Grammar (left associative, ^ binds tighter than * which binds tighter
than + and -):

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor | variable-factor)*
    factor := primary ("^" UINT)*
    primary:= INT | VAR | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := "res" | "tr" | "N" | "conj"
    VAR    := "x" | "n" | "t" | "t_<k>" | "t_{<i>,<j>}"

A variable token directly following a factor is an implicit product, and a
single leading minus is allowed, so printed normal forms such as
"2n + t_2" or "-1 + t" re-parse to equal elements.

Every node carries a level (fixed or underlying): res maps fixed to
underlying, tr and N underlying to fixed, conj preserves underlying;
integer literals adapt to either level.  Inference unifies bottom-up and a
resolution pass pins the leftover polymorphic nodes to the requested
output level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CapabilityError, ExprError, LevelError
from .functors import FIXED, UNDERLYING

FUNCS = ("res", "tr", "N", "conj")

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>t_\{\d+,\d+\}|t_\d+|[A-Za-z]+)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group()), pos))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group(), pos))
        elif m.lastgroup == "op":
            tokens.append(("op", m.group(), pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


@dataclass
class Num:
    value: int
    off: int
    level: str = None


@dataclass
class Var:
    name: str
    off: int
    level: str = None


@dataclass
class BinOp:
    op: str
    left: object
    right: object
    off: int
    level: str = None


@dataclass
class Pow:
    base: object
    exp: int
    off: int
    level: str = None


@dataclass
class Call:
    fn: str
    arg: object
    off: int
    level: str = None


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, off = self.peek()
        if kind != "op" or value != op:
            raise ExprError(f"expected {op!r}", off)
        return self.advance()

    def parse_expr(self):
        kind, value, off = self.peek()
        negate = False
        if kind == "op" and value == "-":
            self.advance()
            negate = True
        node = self.parse_term()
        if negate:
            node = BinOp("-", Num(0, off), node, off)
        while True:
            kind, value, off = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = BinOp(value, node, self.parse_term(), off)
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            kind, value, off = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = BinOp("*", node, self.parse_factor(), off)
            elif kind == "name" and value not in FUNCS:
                # implicit product: a coefficient juxtaposed to a variable
                node = BinOp("*", node, self.parse_factor(), off)
            else:
                return node

    def parse_factor(self):
        node = self.parse_primary()
        while True:
            kind, value, off = self.peek()
            if kind == "op" and value == "^":
                self.advance()
                kind2, value2, off2 = self.advance()
                if kind2 != "int":
                    raise ExprError("exponent must be an unsigned integer", off2)
                node = Pow(node, value2, off)
            else:
                return node

    def parse_primary(self):
        kind, value, off = self.advance()
        if kind == "int":
            return Num(value, off)
        if kind == "name":
            if value in FUNCS:
                self.expect_op("(")
                arg = self.parse_expr()
                self.expect_op(")")
                return Call(value, arg, off)
            return Var(value, off)
        if kind == "op" and value == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ExprError(f"unexpected token {value!r}" if value else "unexpected end of input", off)


def parse(text: str):
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    kind, value, off = parser.peek()
    if kind != "end":
        raise ExprError(f"trailing input {value!r}", off)
    return node


def _unify(a, b, op, off):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise LevelError(f"operator {op!r} mixes {a} and {b} operands", off)


def infer_levels(node, level_of):
    """Bottom-up level inference; ``level_of(name)`` gives a variable's
    level, None for level-polymorphic, or raises for unknown names."""
    if isinstance(node, Num):
        node.level = None
    elif isinstance(node, Var):
        node.level = level_of(node.name)
    elif isinstance(node, BinOp):
        left = infer_levels(node.left, level_of)
        right = infer_levels(node.right, level_of)
        node.level = _unify(left, right, node.op, node.off)
    elif isinstance(node, Pow):
        node.level = infer_levels(node.base, level_of)
    elif isinstance(node, Call):
        arg = infer_levels(node.arg, level_of)
        if node.fn == "res":
            _unify(arg, FIXED, "res", node.off)
            node.level = UNDERLYING
        elif node.fn in ("tr", "N"):
            _unify(arg, UNDERLYING, node.fn, node.off)
            node.level = FIXED
        else:  # conj
            _unify(arg, UNDERLYING, "conj", node.off)
            node.level = UNDERLYING
    else:
        raise TypeError(f"not an AST node: {node!r}")
    return node.level


def resolve_levels(node, level):
    """Top-down pass pinning polymorphic subtrees to concrete levels."""
    if node.level is None:
        node.level = level
    elif level is not None and node.level != level:
        raise LevelError(
            f"subexpression has level {node.level}, expected {level}", node.off)
    if isinstance(node, BinOp):
        resolve_levels(node.left, node.level)
        resolve_levels(node.right, node.level)
    elif isinstance(node, Pow):
        resolve_levels(node.base, node.level)
    elif isinstance(node, Call):
        if node.fn == "res":
            resolve_levels(node.arg, FIXED)
        else:
            resolve_levels(node.arg, UNDERLYING)


def evaluate_ast(node, functor, value_of):
    """Evaluate a level-resolved AST; ``value_of(name, level)`` supplies
    variable values."""
    if isinstance(node, Num):
        return functor.int_element(node.level, node.value)
    if isinstance(node, Var):
        return value_of(node.name, node.level)
    if isinstance(node, BinOp):
        left = evaluate_ast(node.left, functor, value_of)
        right = evaluate_ast(node.right, functor, value_of)
        if node.op == "+":
            return functor.add(node.level, left, right)
        if node.op == "-":
            return functor.sub(node.level, left, right)
        return functor.mul(node.level, left, right)
    if isinstance(node, Pow):
        return functor.pow(node.level, evaluate_ast(node.base, functor, value_of),
                           node.exp)
    if isinstance(node, Call):
        arg = evaluate_ast(node.arg, functor, value_of)
        if node.fn == "res":
            return functor.res(arg)
        if node.fn == "tr":
            return functor.tr(arg)
        if node.fn == "conj":
            return functor.conj(arg)
        if not functor.has_norm:
            raise CapabilityError(
                "N needs a functor with a norm (a complete-system target)")
        return functor.norm(arg)
    raise TypeError(f"not an AST node: {node!r}")


def parse_and_evaluate(text, functor, level, level_of, value_of):
    """Full pipeline: parse, infer, pin to the requested level, evaluate."""
    node = parse(text)
    top = infer_levels(node, level_of)
    if top is not None and top != level:
        raise LevelError(f"expression has level {top}, not {level}",
                         node.off)
    resolve_levels(node, level)
    return evaluate_ast(node, functor, value_of)
