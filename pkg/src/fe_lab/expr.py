"""The set-expression language.

    expr := term (('|' | '&' | '\\') term)*
    term := atom | atom '>>' nat | atom '<<' nat
    atom := '{' nat (',' nat)* '}' | 'ap(' nat ',' nat ')' | 'per(' bits ';' bits ')'
          | 'interval(' nat ',' nat ')' | 'N' | 'empty' | ident | '(' expr ')'

Binary operators associate to the left and have no relative precedence, so a
chain may use one operator only; mixing needs parentheses.  ``>>`` is A+k and
``<<`` is A-k.  Whitespace is insignificant.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Union

from . import natset as ns
from .corpus import builtin_corpus
from .errors import EvalError, ExprSyntaxError

RESERVED = frozenset({"N", "empty", "ap", "per", "interval", "base", "tails", "shiftsdown"})
BINARY_OPS = ("|", "&", "\\")


@dataclass(frozen=True)
class Lit:
    values: tuple


@dataclass(frozen=True)
class AP:
    start: int
    step: int


@dataclass(frozen=True)
class Per:
    transient: str
    mask: str


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Shift:
    op: str
    operand: "Node"
    k: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Lit, AP, Per, Interval, Name, Shift, BinOp]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, *expected):
        raise ExprSyntaxError(self.pos, expected, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at(self, token: str) -> bool:
        self.ws()
        return self.text.startswith(token, self.pos)

    def eat(self, token: str):
        if not self.at(token):
            self.fail(repr(token))
        self.pos += len(token)

    def nat(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("natural number")
        return int(self.text[start:self.pos])

    def ident(self) -> Optional[str]:
        self.ws()
        start = self.pos
        if start < len(self.text) and (self.text[start].isalpha() or self.text[start] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            return self.text[start:self.pos]
        return None

    def bitstring(self, stop: str) -> str:
        out = []
        while True:
            self.ws()
            c = self.text[self.pos:self.pos + 1]
            if c in ("0", "1"):
                out.append(c)
                self.pos += 1
            elif c == stop:
                return "".join(out)
            else:
                self.fail("'0'", "'1'", repr(stop))

    def expr(self) -> Node:
        left = self.term()
        chain_op = None
        while True:
            op = next((o for o in BINARY_OPS if self.at(o)), None)
            if op is None:
                return left
            if chain_op is not None and op != chain_op:
                self.fail(repr(chain_op), "')'", "end of input (parenthesize to mix operators)")
            chain_op = op
            self.pos += 1
            left = BinOp(op, left, self.term())

    def term(self) -> Node:
        operand = self.atom()
        for op in (">>", "<<"):
            if self.at(op):
                self.pos += 2
                return Shift(op, operand, self.nat())
        return operand

    def atom(self) -> Node:
        if self.at("("):
            self.pos += 1
            inner = self.expr()
            self.eat(")")
            return inner
        if self.at("{"):
            self.pos += 1
            values = [self.nat()]
            while self.at(","):
                self.pos += 1
                values.append(self.nat())
            self.eat("}")
            return Lit(tuple(values))
        save = self.pos
        name = self.ident()
        if name is None:
            self.pos = save
            self.ws()
            self.fail("'('", "'{'", "'ap('", "'per('", "'interval('", "'N'", "'empty'", "identifier")
        if name in ("ap", "interval") and self.at("("):
            self.pos += 1
            a = self.nat()
            self.eat(",")
            b = self.nat()
            self.eat(")")
            return AP(a, b) if name == "ap" else Interval(a, b)
        if name == "per" and self.at("("):
            self.pos += 1
            transient = self.bitstring(";")
            self.pos += 1
            mask = self.bitstring(")")
            if not mask:
                self.fail("'0'", "'1'")
            self.pos += 1
            return Per(transient, mask)
        return Name(name)

    def finish(self):
        self.ws()
        if self.pos != len(self.text):
            self.fail(*(repr(o) for o in BINARY_OPS), "end of input")


def parse_ast(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def format_expr(node: Node) -> str:
    """Canonical text for an AST; ``parse_ast(format_expr(n)) == n``."""
    if isinstance(node, Lit):
        return "{" + ",".join(map(str, node.values)) + "}"
    if isinstance(node, AP):
        return f"ap({node.start},{node.step})"
    if isinstance(node, Interval):
        return f"interval({node.lo},{node.hi})"
    if isinstance(node, Per):
        return f"per({node.transient};{node.mask})"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Shift):
        inner = format_expr(node.operand)
        if isinstance(node.operand, (Shift, BinOp)):
            inner = f"({inner})"
        return f"{inner} {node.op} {node.k}"
    left = format_expr(node.left)
    if isinstance(node.left, BinOp) and node.left.op != node.op:
        left = f"({left})"
    right = format_expr(node.right)
    if isinstance(node.right, BinOp):
        right = f"({right})"
    return f"{left} {node.op} {right}"


def evaluate(node: Node, corpus: Optional[Mapping[str, ns.NatSet]] = None) -> ns.NatSet:
    if corpus is None:
        corpus = builtin_corpus()
    if isinstance(node, Lit):
        return ns.finite(node.values)
    if isinstance(node, AP):
        return ns.ap(node.start, node.step)
    if isinstance(node, Interval):
        return ns.interval(node.lo, node.hi)
    if isinstance(node, Per):
        return ns.per(node.transient, node.mask)
    if isinstance(node, Name):
        if node.name == "N":
            return ns.naturals()
        if node.name == "empty":
            return ns.empty()
        try:
            return corpus[node.name]
        except KeyError:
            raise EvalError(f"unknown set name {node.name!r}") from None
    if isinstance(node, Shift):
        operand = evaluate(node.operand, corpus)
        return ns.shift_right(operand, node.k) if node.op == ">>" else ns.shift_left(operand, node.k)
    left, right = evaluate(node.left, corpus), evaluate(node.right, corpus)
    try:
        if node.op == "|":
            return ns.union(left, right)
        if node.op == "&":
            return ns.intersect(left, right)
        return ns.difference(left, right)
    except ns.TierError as exc:
        raise EvalError(str(exc)) from exc


def parse_expr(text: str, corpus: Optional[Mapping[str, ns.NatSet]] = None) -> ns.NatSet:
    return evaluate(parse_ast(text), corpus)


def load_corpus(path: Union[str, Path, None] = None) -> dict[str, ns.NatSet]:
    """Built-ins plus ``name = expr`` lines from ``path`` (or ``$FE_LAB_CORPUS``).

    Later lines may refer to earlier names.  ``#`` starts a comment.
    """
    corpus = builtin_corpus()
    path = path or os.environ.get("FE_LAB_CORPUS")
    if not path:
        return corpus
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier() or name in RESERVED:
            raise EvalError(f"{path}:{lineno}: expected 'name = expr'")
        try:
            corpus[name] = parse_expr(body, corpus)
        except ExprSyntaxError as exc:
            raise EvalError(f"{path}:{lineno}: {exc}") from exc
    return corpus


def parse_base(text: str, corpus: Optional[Mapping[str, ns.NatSet]] = None, default_cap: int = 64):
    """``base{expr, ...}``, ``tails(expr[, cap])`` or ``shiftsdown(expr[, cap])``."""
    from .filters import FilterBase, ParametricBase

    if corpus is None:
        corpus = builtin_corpus()
    p = _Parser(text)
    kind = p.ident()
    if kind == "base":
        p.eat("{")
        members = [evaluate(p.expr(), corpus)]
        while p.at(","):
            p.pos += 1
            members.append(evaluate(p.expr(), corpus))
        p.eat("}")
        p.ws()
        if p.pos != len(text):
            p.fail("end of input")
        return FilterBase(tuple(members))
    if kind in ("tails", "shiftsdown"):
        p.eat("(")
        source = evaluate(p.expr(), corpus)
        cap = default_cap
        if p.at(","):
            p.pos += 1
            cap = p.nat()
        p.eat(")")
        p.ws()
        if p.pos != len(text):
            p.fail("end of input")
        return ParametricBase(kind, source, cap)
    p.pos = 0
    p.fail("'base{'", "'tails('", "'shiftsdown('")
