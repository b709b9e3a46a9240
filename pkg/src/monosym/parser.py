"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | var | builtin | '(' expr ')' | '-' factor

``rational`` is ``123`` or ``3/4``; ``var`` is ``x<k>`` with ``1 <= k <= n``;
builtins are ``p<k>``, ``e<k>``, ``h<k>``, ``m[l1,l2,...]``, ``s[l1,...]`` and
``delta``. Multiplication must be written with ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import symfunc, tn
from .partitions import Partition
from .polycore import Poly

DEFAULT_MAX_DEGREE = 64


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"at column {pos + 1}: {message}")
        self.pos = pos


class LoweringError(ValueError):
    pass


# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Builtin:
    name: str  # p, e, h, m, s, delta
    arg: Union[int, tuple, None] = None


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Group:
    inner: "Expr"


Expr = Union[Num, Var, Builtin, BinOp, Pow, Neg, Group]


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z]+)(?P<idx>\d*)|(?P<op>[-+*^()\[\],]))"
)


@dataclass
class _Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int
    idx: str = ""


def tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.group("num") is not None:
            toks.append(_Tok("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            toks.append(_Tok("name", m.group("name"), m.start("name"), m.group("idx")))
        else:
            toks.append(_Tok("op", m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, n: int):
        self.toks = tokenize(src)
        self.k = 0
        self.n = n

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, text: str) -> _Tok:
        if self.cur.kind != "op" or self.cur.text != text:
            raise ParseError(f"expected {text!r}, found {self.describe()}", self.cur.pos)
        return self.take()

    def describe(self) -> str:
        return "end of input" if self.cur.kind == "end" else repr(self.cur.text + self.cur.idx)

    def at(self, *ops: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.describe()}", self.cur.pos)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.at("+", "-"):
            op = self.take().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.at("*"):
            self.take()
            left = BinOp("*", left, self.factor())
        return left

    def factor(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.take()
            tok = self.cur
            if tok.kind != "num" or "/" in tok.text:
                raise ParseError("exponent must be a nonnegative integer", tok.pos)
            self.take()
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Expr:
        tok = self.cur
        if tok.kind == "num":
            self.take()
            try:
                return Num(Fraction(tok.text))
            except ZeroDivisionError:
                raise ParseError("zero denominator", tok.pos) from None
        if self.at("("):
            self.take()
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if self.at("-"):
            self.take()
            return Neg(self.factor())
        if tok.kind == "name":
            return self.name()
        raise ParseError(f"unexpected {self.describe()}", tok.pos)

    def name(self) -> Expr:
        tok = self.take()
        word, idx = tok.text, tok.idx
        if word == "x":
            if not idx:
                raise ParseError("variable needs an index, e.g. x1", tok.pos)
            k = int(idx)
            if not 1 <= k <= self.n:
                raise ParseError(f"variable index {k} out of range 1..{self.n}", tok.pos)
            return Var(k)
        if word in ("p", "e", "h"):
            if not idx:
                raise ParseError(f"{word} needs an index, e.g. {word}2", tok.pos)
            return Builtin(word, int(idx))
        if word == "delta" and not idx:
            return Builtin("delta")
        if word in ("m", "s") and not idx:
            self.expect("[")
            parts = []
            if not self.at("]"):
                parts.append(self.uint())
                while self.at(","):
                    self.take()
                    parts.append(self.uint())
            self.expect("]")
            if any(a < b for a, b in zip(parts, parts[1:])):
                raise ParseError("partition parts must be weakly decreasing", tok.pos)
            return Builtin(word, tuple(parts))
        raise ParseError(f"unknown builtin {word + idx!r}", tok.pos)

    def uint(self) -> int:
        tok = self.cur
        if tok.kind != "num" or "/" in tok.text:
            raise ParseError("expected a nonnegative integer", tok.pos)
        self.take()
        return int(tok.text)


def parse(src: str, n: int) -> Expr:
    return _Parser(src, n).parse()


def lower(e: Expr, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Poly:
    """Evaluate the AST to an exact polynomial in n variables."""

    def check(p: Poly) -> Poly:
        if p and p.degree() > max_degree:
            raise LoweringError(f"degree {p.degree()} exceeds the cap of {max_degree}")
        return p

    def go(e: Expr) -> Poly:
        if isinstance(e, Num):
            return Poly.const(n, e.value)
        if isinstance(e, Var):
            return Poly.var(n, e.index - 1)
        if isinstance(e, Group):
            return go(e.inner)
        if isinstance(e, Neg):
            return -go(e.operand)
        if isinstance(e, BinOp):
            a, b = go(e.left), go(e.right)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if a and b and a.degree() + b.degree() > max_degree:
                raise LoweringError(f"degree {a.degree() + b.degree()} exceeds the cap of {max_degree}")
            return a * b
        if isinstance(e, Pow):
            base = go(e.base)
            if base and base.degree() * e.exp > max_degree:
                raise LoweringError(f"degree {base.degree() * e.exp} exceeds the cap of {max_degree}")
            return base ** e.exp
        if isinstance(e, Builtin):
            if isinstance(e.arg, int) and e.arg > max_degree:
                raise LoweringError(f"degree {e.arg} exceeds the cap of {max_degree}")
            if e.name == "p":
                return symfunc.power_sum(n, e.arg)
            if e.name == "e":
                return symfunc.elementary(n, e.arg)
            if e.name == "h":
                return symfunc.complete_h(n, e.arg)
            if e.name == "delta":
                return tn.delta(n)
            lam = Partition(e.arg)
            if lam.weight > max_degree:
                raise LoweringError(f"degree {lam.weight} exceeds the cap of {max_degree}")
            if len(lam) > n:
                return Poly.zero(n)
            if e.name == "m":
                return symfunc.monomial_sym(n, lam)
            return symfunc.schur(n, lam)
        raise TypeError(f"unknown node {e!r}")

    return check(go(e))


def parse_poly(src: str, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Poly:
    return lower(parse(src, n), n, max_degree)
