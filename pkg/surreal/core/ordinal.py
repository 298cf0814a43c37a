"""
Ординалы ниже ε₀ в нормальной форме Кантора: сравнение, обычная
(некоммутативная) сумма и натуральная сумма Гессенберга.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import List, Tuple

from .errors import ParseError
from .types import Ordering


Term = Tuple["Ordinal", int]


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """
    Σ ω^{e_i}·c_i, показатели строго убывают, коэффициенты > 0; (): это 0.
    """

    terms: Tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        terms = tuple((e, int(c)) for e, c in self.terms)
        for _e, c in terms:
            if c <= 0:
                raise ValueError("коэффициенты КНФ должны быть положительны")
        for (e1, _c1), (e2, _c2) in zip(terms, terms[1:]):
            if ord_cmp(e1, e2) is not Ordering.GT:
                raise ValueError("показатели КНФ должны строго убывать")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ординал не может быть отрицательным")
        if n == 0:
            return ZERO
        return cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, e: "Ordinal", c: int = 1) -> "Ordinal":
        return cls(((e, c),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return all(e.is_zero() for e, _c in self.terms)

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self}: бесконечный ординал")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    @property
    def trailing_exponent(self) -> "Ordinal":
        return self.terms[-1][0] if self.terms else ZERO

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Ordinal.from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_cmp(self, other) is Ordering.LT

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.terms == Ordinal.from_int(other).terms
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if isinstance(other, int):
            other = Ordinal.from_int(other)
        return ord_add(self, other)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


# -----------------------------
# Операции
# -----------------------------


def ord_cmp(a: Ordinal, b: Ordinal) -> Ordering:
    """
    Лексикографическое сравнение КНФ: сначала показатель, затем коэффициент.
    """
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_cmp(ea, eb)
        if c is not Ordering.EQ:
            return c
        if ca != cb:
            return Ordering.of(ca, cb)
    return Ordering.of(len(a.terms), len(b.terms))


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    Обычная сумма: члены a с показателем меньше старшего показателя b поглощаются.
    """
    if b.is_zero():
        return a
    lead_e, lead_c = b.terms[0]
    kept: List[Term] = []
    for e, c in a.terms:
        cmp = ord_cmp(e, lead_e)
        if cmp is Ordering.GT:
            kept.append((e, c))
        elif cmp is Ordering.EQ:
            # совпадающий показатель: коэффициенты складываются
            lead_c += c
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead_e, lead_c),) + b.terms[1:])


def ord_nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    Натуральная сумма Гессенберга ⊕: слияние КНФ со сложением коэффициентов.
    """
    out: List[Term] = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        cmp = ord_cmp(ta[i][0], tb[j][0])
        if cmp is Ordering.GT:
            out.append(ta[i])
            i += 1
        elif cmp is Ordering.LT:
            out.append(tb[j])
            j += 1
        else:
            out.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Ordinal(tuple(out))


# -----------------------------
# Текстовый формат: w^E*c + …
# -----------------------------


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts: List[str] = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
        elif e == ONE:
            parts.append(f"w*{c}")
        elif e.is_finite():
            parts.append(f"w^{e.to_int()}*{c}")
        else:
            parts.append(f"w^({format_ordinal(e)})*{c}")
    return " + ".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(.))")


class _OrdinalParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: List[Tuple[str, int]] = []
        for m in _TOKEN_RE.finditer(text):
            if m.group(1) is not None:
                self.tokens.append((m.group(1), m.start(1) + 1))
            elif m.group(2) is not None:
                self.tokens.append((m.group(2), m.start(2) + 1))
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else ""

    def column(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text) + 1

    def take(self, expected: str = "") -> str:
        tok = self.peek()
        if not tok or (expected and tok != expected):
            want = repr(expected) if expected else "токен"
            raise ParseError(f"Ожидался {want}, получено {tok or 'конец строки'!r}", self.column())
        self.pos += 1
        return tok

    def parse(self) -> Ordinal:
        result = self.sum()
        if self.peek():
            raise ParseError(f"Лишний токен {self.peek()!r}", self.column())
        return result

    def sum(self) -> Ordinal:
        acc = self.term()
        while self.peek() == "+":
            self.take("+")
            acc = ord_add(acc, self.term())
        return acc

    def term(self) -> Ordinal:
        tok = self.peek()
        if tok.isdigit():
            return Ordinal.from_int(int(self.take()))
        if tok == "w":
            self.take("w")
            exponent = ONE
            if self.peek() == "^":
                self.take("^")
                exponent = self.exponent()
            coef = 1
            if self.peek() == "*":
                self.take("*")
                tok = self.take()
                if not tok.isdigit():
                    raise ParseError("Ожидался целый коэффициент", self.column() - 1)
                coef = int(tok)
            if coef == 0:
                return ZERO
            return Ordinal.omega_power(exponent, coef)
        raise ParseError(f"Ожидался член КНФ, получено {tok or 'конец строки'!r}", self.column())

    def exponent(self) -> Ordinal:
        tok = self.peek()
        if tok.isdigit():
            return Ordinal.from_int(int(self.take()))
        if tok == "w":
            self.take("w")
            return OMEGA
        if tok == "(":
            self.take("(")
            inner = self.sum()
            self.take(")")
            return inner
        raise ParseError("Ожидался показатель", self.column())


def parse_ordinal(text: str) -> Ordinal:
    return _OrdinalParser(text).parse()


__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "ord_cmp",
    "ord_add",
    "ord_nat_sum",
    "format_ordinal",
    "parse_ordinal",
]
