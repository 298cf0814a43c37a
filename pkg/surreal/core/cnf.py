"""
Конечная нормальная форма Конвея: Σ r_i·ω^{y_i} с рациональными r_i ≠ 0
и строго убывающими показателями y_i (тоже CnfSurreal).

Представление каноническое, поэтому ≈ на этом слое совпадает со
структурным равенством.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, total_ordering
from typing import Iterable, List, Tuple, Union

from .errors import NegativeOperand, NotMonomial, ParseError, ZeroOperand
from .numeric import Scalar, format_scalar, to_fraction
from .ordinal import Ordinal
from .types import Ordering


CnfTerm = Tuple["CnfSurreal", Fraction]
Operand = Union["CnfSurreal", int, Fraction]


@total_ordering
@dataclass(frozen=True)
class CnfSurreal:
    terms: Tuple[CnfTerm, ...] = ()

    def __post_init__(self) -> None:
        terms = tuple((e, Fraction(c)) for e, c in self.terms)
        for e, c in terms:
            if not isinstance(e, CnfSurreal):
                raise TypeError("показатель должен быть CnfSurreal")
            if c == 0:
                raise ValueError("нулевой коэффициент в КНФ")
        for (e1, _c1), (e2, _c2) in zip(terms, terms[1:]):
            if cnf_cmp(e1, e2) is not Ordering.GT:
                raise ValueError("показатели КНФ должны строго убывать")
        object.__setattr__(self, "terms", terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} не является рациональной константой")
        return self.terms[0][1] if self.terms else Fraction(0)

    # --- операторы ---

    def __add__(self, other: Operand) -> "CnfSurreal":
        return cnf_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "CnfSurreal":
        return cnf_neg(self)

    def __sub__(self, other: Operand) -> "CnfSurreal":
        return cnf_sub(self, _coerce(other))

    def __rsub__(self, other: Operand) -> "CnfSurreal":
        return cnf_sub(_coerce(other), self)

    def __mul__(self, other: Operand) -> "CnfSurreal":
        return cnf_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __lt__(self, other: Operand) -> bool:
        return cnf_cmp(self, _coerce(other)) is Ordering.LT

    def __str__(self) -> str:
        return format_cnf(self)

    def __repr__(self) -> str:
        return f"CnfSurreal({format_cnf(self)})"


ZERO = CnfSurreal()


def cnf_const(r: Scalar) -> CnfSurreal:
    q = to_fraction(r)
    if q == 0:
        return ZERO
    return CnfSurreal(((ZERO, q),))


ONE = cnf_const(1)


def _coerce(x: Operand) -> CnfSurreal:
    if isinstance(x, CnfSurreal):
        return x
    return cnf_const(x)


# -----------------------------
# Порядок и кольцевые операции
# -----------------------------


def cnf_cmp(a: CnfSurreal, b: CnfSurreal) -> Ordering:
    """
    Старший различающийся член решает: при равных показателях решает коэффициент,
    иначе знак коэффициента при большем показателе.
    """
    ta, tb = a.terms, b.terms
    for i in range(max(len(ta), len(tb))):
        if i >= len(ta):
            return Ordering.from_sign(-tb[i][1])
        if i >= len(tb):
            return Ordering.from_sign(ta[i][1])
        (ea, ca), (eb, cb) = ta[i], tb[i]
        c = cnf_cmp(ea, eb)
        if c is Ordering.GT:
            return Ordering.from_sign(ca)
        if c is Ordering.LT:
            return Ordering.from_sign(-cb)
        if ca != cb:
            return Ordering.of(ca, cb)
    return Ordering.EQ


def _by_exponent_desc(t1: CnfTerm, t2: CnfTerm) -> int:
    return -cnf_cmp(t1[0], t2[0]).value


def cnf_from_terms(terms: Iterable[Tuple[CnfSurreal, Scalar]]) -> CnfSurreal:
    """
    Произвольный набор членов → каноническая форма (сортировка, слияние, без нулей).
    """
    items = [(e, to_fraction(c)) for e, c in terms]
    items.sort(key=cmp_to_key(_by_exponent_desc))
    merged: List[CnfTerm] = []
    for e, c in items:
        if merged and merged[-1][0] == e:
            merged[-1] = (e, merged[-1][1] + c)
        else:
            merged.append((e, c))
    return CnfSurreal(tuple((e, c) for e, c in merged if c != 0))


def cnf_add(a: CnfSurreal, b: CnfSurreal) -> CnfSurreal:
    out: List[CnfTerm] = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        c = cnf_cmp(ta[i][0], tb[j][0])
        if c is Ordering.GT:
            out.append(ta[i])
            i += 1
        elif c is Ordering.LT:
            out.append(tb[j])
            j += 1
        else:
            s = ta[i][1] + tb[j][1]
            if s != 0:
                out.append((ta[i][0], s))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return CnfSurreal(tuple(out))


def cnf_neg(a: CnfSurreal) -> CnfSurreal:
    return CnfSurreal(tuple((e, -c) for e, c in a.terms))


def cnf_sub(a: CnfSurreal, b: CnfSurreal) -> CnfSurreal:
    return cnf_add(a, cnf_neg(b))


def cnf_mul(a: CnfSurreal, b: CnfSurreal) -> CnfSurreal:
    """
    Дистрибутивность и ω^x·ω^y = ω^{x+y}.
    """
    products = [
        (cnf_add(ea, eb), ca * cb) for ea, ca in a.terms for eb, cb in b.terms
    ]
    return cnf_from_terms(products)


def cnf_sign(a: CnfSurreal) -> int:
    if not a.terms:
        return 0
    return 1 if a.terms[0][1] > 0 else -1


def cnf_abs(a: CnfSurreal) -> CnfSurreal:
    return cnf_neg(a) if cnf_sign(a) < 0 else a


# -----------------------------
# ω-отображение и архимедовы классы
# -----------------------------


def omega_pow(x: CnfSurreal) -> CnfSurreal:
    return CnfSurreal(((x, Fraction(1)),))


OMEGA = omega_pow(ONE)


def _require_nonneg(*xs: CnfSurreal) -> None:
    for x in xs:
        if cnf_sign(x) < 0:
            raise NegativeOperand(f"{format_cnf(x)} < 0")


def _require_nonzero(*xs: CnfSurreal) -> None:
    for x in xs:
        if x.is_zero():
            raise ZeroOperand("ожидался ненулевой аргумент")


def inf_less(a: CnfSurreal, b: CnfSurreal) -> bool:
    """
    a <∞ b: a·n < b для всех n > 0; только для неотрицательных.
    """
    _require_nonneg(a, b)
    if b.is_zero():
        return False
    if a.is_zero():
        return True
    return cnf_cmp(a.terms[0][0], b.terms[0][0]) is Ordering.LT


def commensurate(a: CnfSurreal, b: CnfSurreal) -> bool:
    """
    Соизмеримость по модулю: старшие показатели |a| и |b| совпадают.
    """
    _require_nonzero(a, b)
    return a.terms[0][0] == b.terms[0][0]


def leader(x: CnfSurreal) -> Tuple[CnfSurreal, Fraction]:
    _require_nonzero(x)
    e, c = x.terms[0]
    return e, c


def cnf_terms(x: CnfSurreal) -> List[CnfTerm]:
    return list(x.terms)


def mono_inverse(x: CnfSurreal) -> CnfSurreal:
    """
    (r·ω^y)^{-1} = r^{-1}·ω^{-y}; общий случай: бесконечный ряд.
    """
    _require_nonzero(x)
    if len(x.terms) != 1:
        raise NotMonomial(f"{format_cnf(x)} не одночлен")
    e, c = x.terms[0]
    return CnfSurreal(((cnf_neg(e), 1 / c),))


def approximations(x: CnfSurreal) -> List[Tuple[CnfSurreal, CnfSurreal]]:
    """
    Последовательные приближения x = s_k + x_k, где s_k: первые k членов,
    а |x_k| <∞ ω^{y_{k-1}}.
    """
    out: List[Tuple[CnfSurreal, CnfSurreal]] = []
    for k in range(1, len(x.terms) + 1):
        out.append((CnfSurreal(x.terms[:k]), CnfSurreal(x.terms[k:])))
    return out


# -----------------------------
# Мосты к другим слоям
# -----------------------------


def ordinal_to_cnf(alpha: Ordinal) -> CnfSurreal:
    """
    КНФ ординала переносится почленно: ω^{α_i}·n_i ↦ n_i·ω^{s_On(α_i)}.
    """
    return CnfSurreal(
        tuple((ordinal_to_cnf(e), Fraction(c)) for e, c in alpha.terms)
    )


def cnf_from_dyadic(d: Scalar) -> CnfSurreal:
    return cnf_const(d)


def cnf_from_form(x) -> CnfSurreal:
    """
    Число конечного дня рождения: константа value(x).
    """
    from .gameform import value

    return cnf_const(value(x))


# -----------------------------
# Текстовый формат
# -----------------------------


def _format_power(e: CnfSurreal) -> str:
    if e == ONE:
        return "w"
    if e.is_constant():
        q = e.constant_value()
        if q.denominator == 1:
            return f"w^{q.numerator}"
        return f"w^({format_scalar(q)})"
    return f"w^({format_cnf(e)})"


def _format_term(e: CnfSurreal, c: Fraction) -> str:
    mag = abs(c)
    if e.is_zero():
        return format_scalar(mag)
    power = _format_power(e)
    if mag == 1:
        return power
    if mag.denominator == 1:
        return f"{mag.numerator}*{power}"
    return f"({format_scalar(mag)})*{power}"


def format_cnf(x: CnfSurreal) -> str:
    """
    `3*w^2 - 2*w^(1/2) + 5 + (7/4)*w^-1`
    """
    if x.is_zero():
        return "0"
    out: List[str] = []
    for i, (e, c) in enumerate(x.terms):
        body = _format_term(e, c)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(.))")


class _CnfParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: List[Tuple[str, int]] = []
        for m in _TOKEN_RE.finditer(text):
            group = 1 if m.group(1) is not None else 2
            if m.group(group) is not None:
                self.tokens.append((m.group(group), m.start(group) + 1))
        self.pos = 0

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.tokens[i][0] if i < len(self.tokens) else ""

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

    def parse(self) -> CnfSurreal:
        result = self.sum()
        if self.peek():
            raise ParseError(f"Лишний токен {self.peek()!r}", self.column())
        return result

    def sum(self) -> CnfSurreal:
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        acc = self.term() if sign > 0 else cnf_neg(self.term())
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = cnf_add(acc, t) if op == "+" else cnf_sub(acc, t)
        return acc

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"Ожидалось целое, получено {tok!r}", self.column() - 1)
        return int(tok)

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/" and self.peek(1).isdigit():
            self.take("/")
            den = self.integer()
            if den == 0:
                raise ParseError("Нулевой знаменатель", self.column() - 1)
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> CnfSurreal:
        tok = self.peek()
        coef = Fraction(1)
        if tok.isdigit():
            coef = self.rational()
            if self.peek() != "*":
                return cnf_const(coef)
            self.take("*")
        elif tok == "(":
            self.take("(")
            neg = self.peek() == "-"
            if neg:
                self.take("-")
            coef = self.rational() * (-1 if neg else 1)
            self.take(")")
            if self.peek() != "*":
                return cnf_const(coef)
            self.take("*")
        return cnf_mul(cnf_const(coef), self.power())

    def power(self) -> CnfSurreal:
        self.take("w")
        if self.peek() != "^":
            return OMEGA
        self.take("^")
        tok = self.peek()
        if tok == "-":
            self.take("-")
            return omega_pow(cnf_const(-self.integer()))
        if tok.isdigit():
            return omega_pow(cnf_const(self.integer()))
        if tok == "w":
            self.take("w")
            return omega_pow(OMEGA)
        self.take("(")
        inner = self.sum()
        self.take(")")
        return omega_pow(inner)


def parse_cnf(text: str) -> CnfSurreal:
    return _CnfParser(text).parse()


__all__ = [
    "CnfSurreal",
    "CnfTerm",
    "ZERO",
    "ONE",
    "OMEGA",
    "cnf_const",
    "cnf_cmp",
    "cnf_from_terms",
    "cnf_add",
    "cnf_neg",
    "cnf_sub",
    "cnf_mul",
    "cnf_sign",
    "cnf_abs",
    "omega_pow",
    "inf_less",
    "commensurate",
    "leader",
    "cnf_terms",
    "mono_inverse",
    "approximations",
    "ordinal_to_cnf",
    "cnf_from_dyadic",
    "cnf_from_form",
    "format_cnf",
    "parse_cnf",
]
