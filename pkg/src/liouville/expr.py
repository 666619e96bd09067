"""Expressions over one variable, numbers and named constants.

Grammar (``^`` binds tightest and associates to the right; unary minus binds
looser than ``^`` so ``-x^2`` is ``-(x^2)``)::

    list    := expr (',' expr)*
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <juxtaposition>) unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

The variable may be written ``xi``, ``ξ``, ``X`` or ``x``.  ``h(..)`` and
``h_k(..)`` are power towers; ``sqrt``, ``exp`` and ``log`` are the usual
functions.  Other names must be declared by the caller.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .interval import DEFAULT_PRECISION, Interval, const_e, const_pi, exp, log, power, sqrt
from .magnitude import format_rational

VARIABLE_NAMES = ("xi", "ξ", "X", "x")
FUNCTIONS = ("sqrt", "exp", "log")
BUILTIN_CONSTANTS = ("e", "pi")


class ParseError(ValueError):
    def __init__(self, message: str, column: int, expected: str | None = None):
        self.message = message
        self.column = column
        self.expected = expected
        text = f"column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


# -- AST ---------------------------------------------------------------


class Expr:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Const(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: Expr


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr


@dataclass(frozen=True)
class Tower(Expr):
    """``h_k(arg)`` for an integer ``k``, or the infinite tower when ``k`` is None."""
    k: int | None
    arg: Expr


@dataclass(frozen=True)
class ExprList(Expr):
    items: tuple[Expr, ...]


XI = Var()


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Num, Const)):
        return False
    if isinstance(e, ExprList):
        return any(contains_var(i) for i in e.items)
    return any(contains_var(c) for c in children(e))


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Neg):
        return (e.arg,)
    if isinstance(e, BinOp):
        return (e.left, e.right)
    if isinstance(e, Pow):
        return (e.base, e.exp)
    if isinstance(e, (Func, Tower)):
        return (e.arg,)
    if isinstance(e, ExprList):
        return e.items
    return ()


def constants_in(e: Expr) -> set[str]:
    if isinstance(e, Const):
        return {e.name}
    out = set()
    for c in children(e):
        out |= constants_in(c)
    return out


# -- tokenizer ---------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<name>[A-Za-z_ξπ][A-Za-z0-9_ξπ]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


# -- parser ------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, names: Iterable[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.names = set(names)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.column, repr(text))
        return self.take()

    @staticmethod
    def _describe(t: Token) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def parse(self) -> Expr:
        items = [self.expr()]
        while self.tok.text == ",":
            self.take()
            items.append(self.expr())
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.column, "operator or end of input")
        return items[0] if len(items) == 1 else ExprList(tuple(items))

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            e = BinOp(op, e, self.term())
        return e

    def _starts_atom(self) -> bool:
        return self.tok.kind in ("name", "num") or self.tok.text == "("

    def term(self) -> Expr:
        e = self.unary()
        while True:
            if self.tok.text in ("*", "/"):
                op = self.take().text
                e = BinOp(op, e, self.unary())
            elif self._starts_atom():
                e = BinOp("*", e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        if self.tok.text == "-":
            self.take()
            return Neg(self.unary())
        if self.tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.text == "^":
            self.take()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text))
        if t.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            self.take()
            return self.name(t)
        raise ParseError(f"unexpected {self._describe(t)}", t.column, "number, name or '('")

    def _call_arg(self) -> Expr:
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return e

    def name(self, t: Token) -> Expr:
        name = t.text
        if name in VARIABLE_NAMES:
            return XI
        m = re.fullmatch(r"h(?:_(\d+))?", name)
        if m and self.tok.text == "(":
            k = m.group(1)
            if k is not None and int(k) < 1:
                raise ParseError("tower index must be >= 1", t.column)
            return Tower(None if k is None else int(k), self._call_arg())
        if name in FUNCTIONS:
            return Func(name, self._call_arg())
        if name in BUILTIN_CONSTANTS or name in self.names:
            return Const(name)
        raise ParseError(f"unknown identifier {name!r}", t.column, "a variable, function or declared constant")


def parse(text: str, names: Iterable[str] = ()) -> Expr:
    """Parse ``text``; ``names`` lists extra constant identifiers."""
    return _Parser(text, names).parse()


# -- printer -----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def to_text(e: Expr) -> str:
    if isinstance(e, Num):
        return format_rational(e.value)
    if isinstance(e, Var):
        return "xi"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        return f"-({inner})" if _prec(e.arg) < 4 else f"-{inner}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = to_text(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = to_text(e.right)
        # left associative: an equal-precedence right operand needs parentheses
        if _prec(e.right) <= p or isinstance(e.right, Neg):
            right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, Pow):
        base = to_text(e.base)
        if _prec(e.base) <= 4:
            base = f"({base})"
        ex = to_text(e.exp)
        if _prec(e.exp) < 4 or isinstance(e.exp, Pow):
            ex = f"({ex})"
        return f"{base}^{ex}"
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    if isinstance(e, Tower):
        head = "h" if e.k is None else f"h_{e.k}"
        return f"{head}({to_text(e.arg)})"
    if isinstance(e, ExprList):
        return ", ".join(to_text(i) for i in e.items)
    raise TypeError(f"not an expression: {e!r}")


# -- evaluation --------------------------------------------------------


def evaluate(e: Expr, prec: int = DEFAULT_PRECISION, x: Interval | None = None,
             values: dict | None = None) -> Interval:
    """Interval enclosure of ``e``; ``x`` is the variable's value, ``values`` named constants."""
    values = values or {}
    if isinstance(e, Num):
        return Interval.coerce(e.value, prec)
    if isinstance(e, Var):
        if x is None:
            raise ValueError("expression depends on the variable but no value was given")
        return x
    if isinstance(e, Const):
        if e.name == "e":
            return const_e(prec)
        if e.name == "pi":
            return const_pi(prec)
        if e.name in values:
            return Interval.coerce(values[e.name], prec)
        raise ValueError(f"no value for constant {e.name!r}")
    if isinstance(e, Neg):
        return -evaluate(e.arg, prec, x, values)
    if isinstance(e, BinOp):
        a, b = evaluate(e.left, prec, x, values), evaluate(e.right, prec, x, values)
        return {"+": a.__add__, "-": a.__sub__, "*": a.__mul__, "/": a.__truediv__}[e.op](b)
    if isinstance(e, Pow):
        a = evaluate(e.base, prec, x, values)
        if isinstance(e.exp, Num) and e.exp.value.denominator == 1 and e.exp.value >= 0:
            return a.ipow(int(e.exp.value))
        return power(a, evaluate(e.exp, prec, x, values))
    if isinstance(e, Func):
        a = evaluate(e.arg, prec, x, values)
        return {"sqrt": sqrt, "exp": exp, "log": log}[e.name](a)
    if isinstance(e, Tower):
        if e.k is None:
            raise ValueError("the infinite tower has no direct evaluation here")
        a = evaluate(e.arg, prec, x, values)
        out = a
        for _ in range(e.k - 1):
            out = power(a, out)
        return out
    raise ValueError(f"cannot evaluate {type(e).__name__}")
