"""
Конечные знаковые разложения: лексикографический порядок
(− ≺ «не определено» ≺ +), отрицание и мост к каноническим формам.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import ParseError
from .gameform import FormArena, GameForm, value
from .numeric import Dyadic, Scalar, to_fraction
from .types import Ordering, Sign


_RANK = {Sign.MINUS: -1, None: 0, Sign.PLUS: 1}


@dataclass(frozen=True)
class SignExpansion:
    signs: Tuple[Sign, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", tuple(self.signs))

    def __len__(self) -> int:
        return len(self.signs)

    def at(self, i: int) -> Optional[Sign]:
        return self.signs[i] if i < len(self.signs) else None

    def __str__(self) -> str:
        return format_signs(self)

    def __repr__(self) -> str:
        return f"SignExpansion({format_signs(self)!r})"


def parse_signs(text: str) -> SignExpansion:
    out = []
    for i, ch in enumerate((text or "").strip()):
        if ch == "+":
            out.append(Sign.PLUS)
        elif ch in ("-", "−"):
            out.append(Sign.MINUS)
        else:
            raise ParseError(f"Недопустимый символ знака {ch!r}", column=i + 1)
    return SignExpansion(tuple(out))


def format_signs(x: SignExpansion) -> str:
    return "".join(s.value for s in x.signs)


def birthday(x: SignExpansion) -> int:
    return len(x.signs)


def lex_cmp(x: SignExpansion, y: SignExpansion) -> Ordering:
    """
    Первая позиция, где x(α) ≠ y(α), решает: − ≺ не определено ≺ +.
    """
    for i in range(max(len(x), len(y))):
        a, b = x.at(i), y.at(i)
        if a is not b:
            return Ordering.of(_RANK[a], _RANK[b])
    return Ordering.EQ


def negate(x: SignExpansion) -> SignExpansion:
    return SignExpansion(tuple(s.flipped() for s in x.signs))


# -----------------------------
# Мост к двоично-рациональным
# -----------------------------


def _walk(signs: Iterable[Sign]) -> Fraction:
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    cur = Fraction(0)
    for s in signs:
        if s is Sign.PLUS:
            lo = cur
        else:
            hi = cur
        cur = _next_node(lo, hi)
    return cur


def _next_node(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if hi is None:
        return lo + 1  # type: ignore[operator]
    if lo is None:
        return hi - 1
    return (lo + hi) / 2


def to_dyadic(x: SignExpansion) -> Dyadic:
    return Dyadic.from_fraction(_walk(x.signs))


def from_dyadic(d: Scalar) -> SignExpansion:
    """
    Спуск по дереву от 0: + вправо, − влево, пока не встретим d.
    """
    target = to_fraction(d)
    if target.denominator & (target.denominator - 1):
        raise ValueError(f"{target} не является двоично-рациональным")
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    cur = Fraction(0)
    out = []
    while cur != target:
        if target > cur:
            out.append(Sign.PLUS)
            lo = cur
        else:
            out.append(Sign.MINUS)
            hi = cur
        cur = _next_node(lo, hi)
    return SignExpansion(tuple(out))


def from_form(x: GameForm) -> SignExpansion:
    return from_dyadic(value(x))


def to_canonical_form(x: SignExpansion, arena: Optional[FormArena] = None) -> GameForm:
    from .embed import s_D

    return s_D(to_dyadic(x), arena)


def all_expansions(length: int) -> Iterable[SignExpansion]:
    """
    Все 2^length разложений данной длины.
    """
    if length == 0:
        yield SignExpansion(())
        return
    for tail in all_expansions(length - 1):
        yield SignExpansion(tail.signs + (Sign.MINUS,))
        yield SignExpansion(tail.signs + (Sign.PLUS,))


__all__ = [
    "SignExpansion",
    "parse_signs",
    "format_signs",
    "birthday",
    "lex_cmp",
    "negate",
    "to_dyadic",
    "from_dyadic",
    "from_form",
    "to_canonical_form",
    "all_expansions",
]
