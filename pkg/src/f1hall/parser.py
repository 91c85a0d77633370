"""Text syntax for algebra elements.

Grammar (standard precedence, ``^`` binds tightest)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "·" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "s" | "w(" INT "," INT ")" | "u(" INT "," INT ")" | "(" expr ")"

Division is only by scalars.  ``u(r,d)`` stands for ``w(r,d) / (s^g - s^-g)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .eha import EHAElement, Scaled, format_element, u
from .laurent import LaurentPoly
from .lattice import nonzero

TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(·|[-+*/^(),]))")


class ExprSyntaxError(SyntaxError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.msg = f"{msg} at position {pos}"
        self.reason = msg
        self.text = text
        self.pos = pos
        self.offset = pos


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str  # only "s"


@dataclass(frozen=True)
class Gen:
    kind: str  # "w" or "u"
    r: int
    d: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Sym, Gen, Neg, BinOp, Pow]


# -- tokenizer and parser ------------------------------------------------------


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = TOKEN.match(text, pos)
        if not m:
            skip = len(text) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[skip]!r}", text, skip)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("int", num, start))
        elif ident is not None:
            out.append(("name", ident, start))
        else:
            out.append(("op", "*" if op == "·" else op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, self.text, tok[2])

    def expect(self, value: str):
        t = self.take()
        if t[0] != "op" or t[1] != value:
            self.error(f"expected {value!r}", t)

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return Pow(base, self.signed_int())
        return base

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "int":
            self.error("expected an integer", t)
        return sign * int(t[1])

    def atom(self) -> Expr:
        t = self.peek()
        if t[0] == "int":
            self.take()
            return Num(int(t[1]))
        if t[0] == "name":
            self.take()
            if t[1] == "s":
                return Sym("s")
            if t[1] in ("w", "u"):
                self.expect("(")
                r = self.signed_int()
                self.expect(",")
                d = self.signed_int()
                self.expect(")")
                return Gen(t[1], r, d)
            self.error(f"unknown symbol {t[1]!r}", t)
        if t[:2] == ("op", "("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected a number, s, w(r,d), u(r,d) or '('", t)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def parse_vector(text: str) -> Tuple[int, int]:
    """'r,d' or '(r,d)' -> (r, d)."""
    m = re.fullmatch(r"\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*", text)
    if not m:
        raise ExprSyntaxError("expected a lattice vector r,d", text, 0)
    return int(m.group(1)), int(m.group(2))


# -- evaluation --------------------------------------------------------------


def _is_scalar(v: Scaled) -> bool:
    return not any(m for m in v.num.terms)


def _evaluate(e: Expr) -> Scaled:
    if isinstance(e, Num):
        return Scaled.lift(e.value)
    if isinstance(e, Sym):
        return Scaled.lift(LaurentPoly.var("s"))
    if isinstance(e, Gen):
        x = nonzero((e.r, e.d))
        return Scaled.lift(EHAElement.generator(x)) if e.kind == "w" else u(x)
    if isinstance(e, Neg):
        return -_evaluate(e.arg)
    if isinstance(e, Pow):
        base = _evaluate(e.base)
        if e.exp >= 0:
            return base**e.exp
        if not _is_scalar(base):
            raise ValueError("negative powers are only defined for scalars")
        return Scaled(EHAElement.scalar(base.den), _coeff(base.num)) ** (-e.exp)
    left, right = _evaluate(e.left), _evaluate(e.right)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if not _is_scalar(right):
        raise ValueError("division is only defined by scalars")
    c = _coeff(right.num)
    if c.is_zero():
        raise ZeroDivisionError("division by zero")
    return Scaled(left.num.scale(right.den), left.den * c)


def _coeff(a: EHAElement) -> LaurentPoly:
    return a.terms.get((), LaurentPoly.zero())


def evaluate(e: Expr) -> EHAElement:
    """Normal form of the expression; raises NotDivisible if it is not Laurent."""
    v = _evaluate(e)
    if v.den.is_monomial():
        return v.num.scale(v.den.inverse_monomial())
    return v.to_element()


def eval_text(text: str) -> EHAElement:
    return evaluate(parse(text))


def to_text(a: EHAElement) -> str:
    return format_element(a)


__all__ = [
    "BinOp",
    "Expr",
    "ExprSyntaxError",
    "Gen",
    "Neg",
    "Num",
    "Pow",
    "Sym",
    "eval_text",
    "evaluate",
    "parse",
    "parse_vector",
    "to_text",
    "tokenize",
]
