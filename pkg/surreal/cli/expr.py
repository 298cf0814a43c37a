"""
Выражения калькулятора: токенизатор, рекурсивный спуск и печать.

  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := '-' factor | atom ['^' factor]
  atom   := number | 'w' | brace | NAME '(' args ')' | NAME | '(' expr ')'
  brace  := '{' [expr (',' expr)*] '|' [expr (',' expr)*] '}'
  number := INT | INT '/' INT   (дробь: только без пробелов вокруг '/')

Оператор печатается с пробелами, поэтому `1/2` (литерал) и `1 / 2`
(деление) различаются и после печати.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from ..core.errors import ParseError
from ..core.numeric import format_scalar


# -----------------------------
# AST
# -----------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Brace:
    left: Tuple["Expr", ...]
    right: Tuple["Expr", ...]


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]


Expr = Union[Num, Omega, Var, Brace, Neg, BinOp, Call]


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr


Statement = Union[Let, Expr]

OMEGA_NAME = "w"
KEYWORDS = ("let",)


# -----------------------------
# Токены
# -----------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT | NAME | OP | END
    text: str
    column: int
    end: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(){}|,=]))")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"Недопустимый символ {text[col - 1]!r}", col)
        kind = m.lastgroup or "op"
        start = m.start(kind)
        tokens.append(Token(kind.upper(), m.group(kind), start + 1, m.end(kind)))
        pos = m.end()
    tokens.append(Token("END", "", len(text) + 1, len(text)))
    return tokens


# -----------------------------
# Парсер
# -----------------------------


class Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text == text

    def take(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            got = tok.text or "конец строки"
            raise ParseError(f"Ожидался {text!r}, получено {got!r}", tok.column)
        return self.take()

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"Лишний токен {tok.text!r}", tok.column)

    # --- грамматика ---

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.kind == "NAME" and tok.text == "let":
            self.take()
            name = self.take()
            if name.kind != "NAME" or name.text in KEYWORDS or name.text == OMEGA_NAME:
                raise ParseError(f"Недопустимое имя переменной {name.text!r}", name.column)
            self.expect("=")
            return Let(name.text, self.expr())
        return self.expr()

    def expr(self) -> Expr:
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            acc = BinOp(op, acc, self.term())
        return acc

    def term(self) -> Expr:
        acc = self.factor()
        while self.at("*") or self.at("/"):
            op = self.take().text
            acc = BinOp(op, acc, self.factor())
        return acc

    def factor(self) -> Expr:
        if self.at("-"):
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.at("^"):
            self.take()
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            return self.number()
        if tok.kind == "NAME":
            self.take()
            if tok.text == OMEGA_NAME:
                return Omega()
            if tok.text in KEYWORDS:
                raise ParseError(f"Неожиданное ключевое слово {tok.text!r}", tok.column)
            if self.at("("):
                self.take()
                args = self.arguments(")")
                self.expect(")")
                return Call(tok.text, tuple(args))
            return Var(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "OP" and tok.text == "{":
            self.take()
            left = self.arguments("|")
            self.expect("|")
            right = self.arguments("}")
            self.expect("}")
            return Brace(tuple(left), tuple(right))
        got = tok.text or "конец строки"
        raise ParseError(f"Ожидалось выражение, получено {got!r}", tok.column)

    def arguments(self, closer: str) -> List[Expr]:
        out: List[Expr] = []
        if self.at(closer):
            return out
        out.append(self.expr())
        while self.at(","):
            self.take()
            out.append(self.expr())
        return out

    def number(self) -> Num:
        num = self.take()
        slash, den = self.peek(), self.peek(1)
        adjacent = (
            slash.kind == "OP"
            and slash.text == "/"
            and slash.column == num.end + 1
            and den.kind == "INT"
            and den.column == slash.end + 1
        )
        if not adjacent:
            return Num(Fraction(int(num.text)))
        self.take()
        self.take()
        if int(den.text) == 0:
            raise ParseError("Нулевой знаменатель", den.column)
        return Num(Fraction(int(num.text), int(den.text)))


def parse(text: str) -> Expr:
    p = Parser(text)
    e = p.expr()
    p.finish()
    return e


def parse_statement(text: str) -> Statement:
    p = Parser(text)
    s = p.statement()
    p.finish()
    return s


# -----------------------------
# Печать
# -----------------------------


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG_PREC
    if isinstance(e, Num) and e.value < 0:
        return _NEG_PREC
    return _ATOM_PREC


def _wrap(e: Expr, need: int) -> str:
    s = to_text(e)
    return f"({s})" if _prec(e) < need else s


def to_text(e: Expr) -> str:
    """
    Печать с минимальными скобками; parse(to_text(e)) == e
    для деревьев без отрицательных литералов.
    """
    if isinstance(e, Num):
        return format_scalar(e.value)
    if isinstance(e, Omega):
        return OMEGA_NAME
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Brace):
        return "{" + ", ".join(to_text(x) for x in e.left) + " | " + ", ".join(to_text(x) for x in e.right) + "}"
    if isinstance(e, Call):
        return f"{e.name}(" + ", ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _NEG_PREC)
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        if e.op == "^":
            return f"{_wrap(e.left, _ATOM_PREC)} ^ {_wrap(e.right, _NEG_PREC)}"
        return f"{_wrap(e.left, p)} {e.op} {_wrap(e.right, p + 1)}"
    raise TypeError(f"Неизвестный узел: {e!r}")


def statement_to_text(s: Statement) -> str:
    if isinstance(s, Let):
        return f"let {s.name} = {to_text(s.expr)}"
    return to_text(s)


# -----------------------------
# Слои
# -----------------------------


def mentions_omega(e: Expr) -> bool:
    return any(isinstance(n, Omega) for n in walk(e))


def mentions_brace(e: Expr) -> bool:
    return any(isinstance(n, Brace) for n in walk(e))


def walk(e: Expr):
    stack: List[Expr] = [e]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, Brace):
            stack.extend(n.left + n.right)
        elif isinstance(n, Neg):
            stack.append(n.operand)
        elif isinstance(n, BinOp):
            stack.extend((n.left, n.right))
        elif isinstance(n, Call):
            stack.extend(n.args)


def free_names(e: Expr) -> List[str]:
    return sorted({n.name for n in walk(e) if isinstance(n, Var)})


__all__ = [
    "Num",
    "Omega",
    "Var",
    "Brace",
    "Neg",
    "BinOp",
    "Call",
    "Expr",
    "Let",
    "Statement",
    "Token",
    "tokenize",
    "Parser",
    "parse",
    "parse_statement",
    "to_text",
    "statement_to_text",
    "mentions_omega",
    "mentions_brace",
    "walk",
    "free_names",
]
