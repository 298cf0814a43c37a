"""
Точные скаляры: двоично-рациональные (Dyadic) и рациональные (Fraction),
плюс выбор «простейшего» двоично-рационального в интервале: основа
канонизации чисел конечного дня рождения.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

from .errors import DivByZero, EmptyInterval, ParseError


Scalar = Union["Dyadic", Fraction, int]


# -----------------------------
# Dyadic
# -----------------------------


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """
    numerator / 2^exponent; нормализовано: exponent == 0 или numerator нечетный.
    """

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponent должен быть >= 0")
        n, e = self.numerator, self.exponent
        if n == 0:
            e = 0
        else:
            # сокращаем общую степень двойки
            tz = (n & -n).bit_length() - 1
            shift = min(tz, e)
            n >>= shift
            e -= shift
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    # --- конструирование ---

    @classmethod
    def from_int(cls, i: int) -> "Dyadic":
        return cls(int(i), 0)

    @classmethod
    def from_fraction(cls, q: Union[Fraction, int]) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} не является двоично-рациональным")
        return cls(q.numerator, den.bit_length() - 1)

    # --- свойства ---

    @property
    def denominator(self) -> int:
        return 1 << self.exponent

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_integer(self) -> bool:
        return self.exponent == 0

    @property
    def birthday(self) -> int:
        """
        Длина знакового разложения: |n| для целых,
        ⌊|d|⌋ + 1 + exponent для нецелых.
        """
        if self.exponent == 0:
            return abs(self.numerator)
        return abs(self.numerator) // self.denominator + 1 + self.exponent

    # --- арифметика ---

    def _coerce(self, other: object) -> Optional["Dyadic"]:
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Dyadic(other, 0)
        return None

    def __add__(self, other: object):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.to_fraction() + other
            return NotImplemented
        e = max(self.exponent, o.exponent)
        return Dyadic(
            (self.numerator << (e - self.exponent)) + (o.numerator << (e - o.exponent)),
            e,
        )

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __sub__(self, other: object):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.to_fraction() - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object):
        return (-self) + other

    def __mul__(self, other: object):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.to_fraction() * other
            return NotImplemented
        return Dyadic(self.numerator * o.numerator, self.exponent + o.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Fraction:
        return dyadic_arith(self, other, "/")  # type: ignore[return-value]

    def __rtruediv__(self, other: object) -> Fraction:
        return dyadic_arith(other, self, "/")  # type: ignore[return-value]

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.numerator), self.exponent)

    # --- сравнение ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.numerator == other.numerator and self.exponent == other.exponent
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.to_fraction() < other.to_fraction()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Dyadic({format_scalar(self)})"


def is_dyadic(q: Union[Fraction, int, Dyadic]) -> bool:
    if isinstance(q, Dyadic):
        return True
    den = Fraction(q).denominator
    return den & (den - 1) == 0


def to_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Dyadic):
        return x.to_fraction()
    return Fraction(x)


# -----------------------------
# Арифметика-оракул
# -----------------------------


def dyadic_arith(a: Scalar, b: Scalar, op: str) -> Union[Dyadic, Fraction]:
    """
    Точная арифметика над Dyadic/Fraction.
    Результат Dyadic, если оба аргумента Dyadic и op ∈ {+, -, *}.
    """
    both = isinstance(a, Dyadic) and isinstance(b, Dyadic)
    if op in ("+", "-", "*", "×", "−"):
        if both:
            if op == "+":
                return a + b  # type: ignore[operator]
            if op in ("-", "−"):
                return a - b  # type: ignore[operator]
            return a * b  # type: ignore[operator]
        fa, fb = to_fraction(a), to_fraction(b)
        if op == "+":
            return fa + fb
        if op in ("-", "−"):
            return fa - fb
        return fa * fb
    if op in ("/", "÷"):
        fb = to_fraction(b)
        if fb == 0:
            raise DivByZero("деление на ноль")
        return to_fraction(a) / fb
    raise ValueError(f"Неизвестная операция: {op!r}")


# -----------------------------
# Интервалы и выбор простейшего
# -----------------------------


@dataclass(frozen=True)
class BoundedInterval:
    """
    Открытый интервал (lower, upper); None означает бесконечность.
    """

    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None

    def __post_init__(self) -> None:
        lo = None if self.lower is None else to_fraction(self.lower)
        hi = None if self.upper is None else to_fraction(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo is not None and hi is not None and not lo < hi:
            raise EmptyInterval(f"пустой интервал ({lo}, {hi})")

    def contains(self, x: Scalar) -> bool:
        q = to_fraction(x)
        if self.lower is not None and not self.lower < q:
            return False
        if self.upper is not None and not q < self.upper:
            return False
        return True

    def negated(self) -> "BoundedInterval":
        lo = None if self.upper is None else -self.upper
        hi = None if self.lower is None else -self.lower
        return BoundedInterval(lo, hi)

    def __str__(self) -> str:
        lo = "-inf" if self.lower is None else format_scalar(self.lower)
        hi = "+inf" if self.upper is None else format_scalar(self.upper)
        return f"({lo}, {hi})"


def simplest_dyadic(interval: BoundedInterval) -> Dyadic:
    """
    Единственное двоично-рациональное минимальной длины знакового разложения
    строго внутри интервала: целое с наименьшим модулем (0 в приоритете),
    иначе: бисекция от окружающих целых.
    """
    lo, hi = interval.lower, interval.upper
    if lo is not None and hi is not None and not lo < hi:
        raise EmptyInterval(f"пустой интервал ({lo}, {hi})")
    if interval.contains(0):
        return Dyadic(0)
    if hi is not None and hi <= 0:
        return -simplest_dyadic(interval.negated())
    # Здесь lo >= 0
    assert lo is not None
    n = math.floor(lo) + 1
    if hi is None or n < hi:
        return Dyadic(n)
    # Целых внутри нет: ищем наименьший знаменатель 2^k
    k = 1
    while True:
        m = math.floor(lo * (1 << k)) + 1
        if Fraction(m, 1 << k) < hi:
            return Dyadic(m, k)
        k += 1


# -----------------------------
# Текстовый формат p/q
# -----------------------------

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text: str) -> Fraction:
    m = _SCALAR_RE.match(text or "")
    if not m:
        raise ParseError(f"Ожидалось число вида p или p/q: {text!r}", column=1)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DivByZero(f"нулевой знаменатель в {text!r}")
    return Fraction(num, den)


def parse_dyadic(text: str) -> Dyadic:
    q = parse_scalar(text)
    if not is_dyadic(q):
        raise ParseError(f"{text!r}: знаменатель не степень двойки", column=1)
    return Dyadic.from_fraction(q)


def format_scalar(x: Scalar) -> str:
    q = to_fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


__all__ = [
    "Scalar",
    "Dyadic",
    "is_dyadic",
    "to_fraction",
    "dyadic_arith",
    "BoundedInterval",
    "simplest_dyadic",
    "parse_scalar",
    "parse_dyadic",
    "format_scalar",
]
