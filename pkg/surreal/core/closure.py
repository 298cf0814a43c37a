"""
Обратный элемент и квадратный корень как итерации, порождающие новые
опции из старых. Значения опций считаются в точных рациональных числах;
точная форма возвращается, только когда простейшее двоично-рациональное
скобки совпадает с двоичной целью.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .embed import s_D
from .errors import (
    DivByZero,
    InvalidSeed,
    NegativeOperand,
    NotPositive,
    SeedNotRational,
)
from .gameform import FormArena, GameForm, default_arena, neg, value
from .numeric import (
    BoundedInterval,
    Dyadic,
    Scalar,
    format_scalar,
    is_dyadic,
    simplest_dyadic,
    to_fraction,
)


INV_STEPS_CAP = 64
SQRT_STEPS_CAP = 16

INVERSE = "inverse"
SQRT = "sqrt"


@dataclass(frozen=True)
class CutApprox:
    """
    Конечный отрезок итерации: опции в порядке порождения
    (по шагам, внутри шага по возрастанию).
    """

    kind: str
    operand: Fraction
    target: Optional[Fraction]
    left_values: Tuple[Fraction, ...]
    right_values: Tuple[Fraction, ...]
    steps: int
    fixpoint: bool = False
    # множитель для a/b = a·b⁻¹; опции хранятся уже умноженными
    scale: Fraction = field(default=Fraction(1))

    def interval(self) -> BoundedInterval:
        return cut_interval(self)

    def extract(self) -> Dyadic:
        return cut_extract(self)

    @property
    def exact(self) -> bool:
        """
        Простейшее значение скобки совпадает с целью; неподвижная точка
        с другим значением (неудачные затравки) точной не считается.
        """
        if self.target is None or not is_dyadic(self.target):
            return False
        return cut_extract(self) == self.target

    def certificate_holds(self) -> bool:
        """
        Каждая опция по свою сторону от цели: x·l < 1 < x·r для обратного,
        l² < x < r² для корня (для исходных, немасштабированных опций).
        """
        left, right = self._raw_sides()
        x = self.operand
        if self.kind == INVERSE:
            return all(x * l < 1 for l in left) and all(x * r > 1 for r in right)
        return all(l * l < x for l in left) and all(r * r > x for r in right)

    def _raw_sides(self) -> Tuple[List[Fraction], List[Fraction]]:
        s = self.scale
        left = [v / s for v in self.left_values]
        right = [v / s for v in self.right_values]
        return (left, right) if s > 0 else (right, left)

    def to_form(self, arena: Optional[FormArena] = None) -> GameForm:
        """
        {s_D(l) | s_D(r)} по всем опциям; только для двоичных значений.
        """
        arena = arena or default_arena()
        values = self.left_values + self.right_values
        bad = [v for v in values if not is_dyadic(v)]
        if bad:
            raise ValueError(f"опция {format_scalar(bad[0])} не двоично-рациональна")
        return arena.make(
            [s_D(v, arena) for v in self.left_values],
            [s_D(v, arena) for v in self.right_values],
        )

    def scaled(self, r: Scalar) -> "CutApprox":
        """
        Скобка для r·цель: опции умножаются на r, при r < 0 стороны меняются.
        """
        q = to_fraction(r)
        if q == 0:
            raise ValueError("масштаб 0 вырождает скобку")
        left = tuple(v * q for v in self.left_values)
        right = tuple(v * q for v in self.right_values)
        if q < 0:
            left, right = right, left
        target = None if self.target is None else self.target * q
        return replace(self, left_values=left, right_values=right, target=target, scale=self.scale * q)

    def negated(self) -> "CutApprox":
        return self.scaled(-1)

    def to_data(self) -> Dict[str, Any]:
        b = cut_interval(self)
        return {
            "kind": self.kind,
            "operand": format_scalar(self.operand),
            "target": None if self.target is None else format_scalar(self.target),
            "left": [format_scalar(v) for v in self.left_values],
            "right": [format_scalar(v) for v in self.right_values],
            "interval": [
                None if b.lower is None else format_scalar(b.lower),
                None if b.upper is None else format_scalar(b.upper),
            ],
            "steps": self.steps,
            "exact": self.exact,
        }


def cut_interval(c: CutApprox) -> BoundedInterval:
    lo = max(c.left_values) if c.left_values else None
    hi = min(c.right_values) if c.right_values else None
    return BoundedInterval(lo, hi)


def cut_extract(c: CutApprox) -> Dyadic:
    return simplest_dyadic(cut_interval(c))


# -----------------------------
# Общий цикл итерации
# -----------------------------


def _check_steps(steps: int, cap: int) -> None:
    if steps < 0:
        raise ValueError("steps должно быть >= 0")
    if steps > cap:
        raise ValueError(f"steps={steps} превышает предел {cap}")


def _fresh(candidates: Iterable[Fraction], known: Sequence[Fraction]) -> List[Fraction]:
    seen = set(known)
    return sorted(set(v for v in candidates if v not in seen))


# -----------------------------
# Обратный элемент
# -----------------------------


def _positive_value(x: GameForm) -> Fraction:
    v = value(x).to_fraction()
    if v <= 0:
        raise NotPositive(f"value = {format_scalar(v)}, требуется > 0")
    return v


def _inverse_options(x: GameForm) -> Tuple[List[Fraction], List[Fraction]]:
    _positive_value(x)
    left = sorted({Fraction(0)} | {value(l).to_fraction() for l in x.left if value(l) > 0})
    right = sorted({value(r).to_fraction() for r in x.right if value(r) > 0})
    return left, right


def inverse_rep(x: GameForm) -> GameForm:
    """
    p = {0, x^L | x^R} с положительными опциями; p ≈ x.
    """
    left, right = _inverse_options(x)
    arena = x.arena
    return arena.make([s_D(v, arena) for v in left], [s_D(v, arena) for v in right])


def inv_iterate(x: GameForm, steps: int) -> CutApprox:
    """
    y = {0, y' | y''} с опциями (1 + (p' − p)·y°)/p' для положительных опций p' ≠ 0:
    (p^R, y^L), (p^L, y^R) дают левые, (p^L, y^L), (p^R, y^R) дают правые.
    Шаг: сначала левые из текущих правых, затем правые из обновленных левых.
    """
    _check_steps(steps, INV_STEPS_CAP)
    p = _positive_value(x)
    p_left, p_right = _inverse_options(x)
    p_left = [a for a in p_left if a > 0]

    def opt(pi: Fraction, yi: Fraction) -> Fraction:
        return (1 + (pi - p) * yi) / pi

    left: List[Fraction] = [Fraction(0)]
    right: List[Fraction] = []
    done = 0
    fixpoint = False
    while done < steps:
        new_left = _fresh(
            [opt(a, y) for a in p_right for y in left] + [opt(a, y) for a in p_left for y in right],
            left,
        )
        left.extend(new_left)
        new_right = _fresh(
            [opt(a, y) for a in p_left for y in left] + [opt(a, y) for a in p_right for y in right],
            right,
        )
        right.extend(new_right)
        done += 1
        if not new_left and not new_right:
            fixpoint = True
            break
    return CutApprox(INVERSE, p, 1 / p, tuple(left), tuple(right), done, fixpoint)


# -----------------------------
# Квадратный корень
# -----------------------------


def rational_sqrt(q: Scalar) -> Optional[Fraction]:
    """
    Точный рациональный корень или None.
    """
    q = to_fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _root_of_option(v: Fraction) -> Fraction:
    r = rational_sqrt(v)
    if r is None:
        raise SeedNotRational(f"√{format_scalar(v)} иррационален; задайте затравки явно")
    return r


def sqrt_seed(x: GameForm) -> Tuple[List[Fraction], List[Fraction]]:
    """
    L = {√x^L : x^L ≥ 0}, R = {√x^R : x^R ≥ 0}.
    """
    v = value(x).to_fraction()
    if v < 0:
        raise NegativeOperand(f"корень из {format_scalar(v)} < 0")
    left = sorted({_root_of_option(value(l).to_fraction()) for l in x.left if value(l) >= 0})
    right = sorted({_root_of_option(value(r).to_fraction()) for r in x.right if value(r) >= 0})
    return left, right


SeedPair = Tuple[Sequence[Scalar], Sequence[Scalar]]


def _validate_seeds(radicand: Fraction, seeds: SeedPair) -> Tuple[List[Fraction], List[Fraction]]:
    left = sorted({to_fraction(v) for v in seeds[0]})
    right = sorted({to_fraction(v) for v in seeds[1]})
    for l in left:
        if l < 0 or not l * l < radicand:
            raise InvalidSeed(f"левая затравка {format_scalar(l)}: нужно 0 <= l, l² < {format_scalar(radicand)}")
    for r in right:
        if r <= 0 or not r * r > radicand:
            raise InvalidSeed(f"правая затравка {format_scalar(r)}: нужно r > 0, r² > {format_scalar(radicand)}")
    return left, right


def _radicand(x: Union[GameForm, Scalar]) -> Fraction:
    v = value(x).to_fraction() if isinstance(x, GameForm) else to_fraction(x)
    if v < 0:
        raise NegativeOperand(f"корень из {format_scalar(v)} < 0")
    return v


def sqrt_iterate(
    x: Union[GameForm, Scalar],
    steps: int,
    seeds: Optional[SeedPair] = None,
) -> CutApprox:
    """
    S(A, B) = {(x + a·b)/(a + b) : a ∈ A, b ∈ B, a + b ≠ 0};
    L' = L ∪ S(L, R), R' = R ∪ S(L, L) ∪ S(R, R) по опциям предыдущего шага.

    x: форма (затравки из ее опций) или рациональное подкоренное число
    (тогда затравки обязательны).
    """
    _check_steps(steps, SQRT_STEPS_CAP)
    radicand = _radicand(x)
    if seeds is None:
        if not isinstance(x, GameForm):
            raise InvalidSeed("для числового подкоренного нужны явные затравки")
        seeds = sqrt_seed(x)
    left, right = _validate_seeds(radicand, seeds)

    def family(a_side: Sequence[Fraction], b_side: Sequence[Fraction]) -> List[Fraction]:
        return [(radicand + a * b) / (a + b) for a in a_side for b in b_side if a + b != 0]

    done = 0
    fixpoint = False
    while done < steps:
        prev_left, prev_right = list(left), list(right)
        new_left = _fresh(family(prev_left, prev_right), prev_left)
        new_right = _fresh(family(prev_left, prev_left) + family(prev_right, prev_right), prev_right)
        left.extend(new_left)
        right.extend(new_right)
        done += 1
        if not new_left and not new_right:
            fixpoint = True
            break
    return CutApprox(SQRT, radicand, rational_sqrt(radicand), tuple(left), tuple(right), done, fixpoint)


# -----------------------------
# Обертки: точная форма или приближение
# -----------------------------


ClosureResult = Union[GameForm, CutApprox]


def _settle(c: CutApprox, arena: FormArena) -> ClosureResult:
    if c.exact:
        return s_D(cut_extract(c), arena)
    return c


def inverse(x: GameForm, steps: int = 8) -> ClosureResult:
    """
    x⁻¹: каноническая форма, если итерация точна, иначе CutApprox.
    Отрицательные x: через −(−x)⁻¹.
    """
    v = value(x)
    if v == 0:
        raise DivByZero("обратный к нулю")
    if v < 0:
        res = inverse(neg(x), steps)
        return neg(res) if isinstance(res, GameForm) else res.negated()
    return _settle(inv_iterate(x, steps), x.arena)


def sqrt(
    x: GameForm,
    steps: int = 8,
    seeds: Optional[SeedPair] = None,
) -> ClosureResult:
    return _settle(sqrt_iterate(x, steps, seeds), x.arena)


def closure_to_data(r: ClosureResult) -> Dict[str, Any]:
    if isinstance(r, CutApprox):
        return r.to_data()
    v = format_scalar(value(r))
    return {"value": v, "interval": [v, v], "exact": True}


__all__ = [
    "INV_STEPS_CAP",
    "SQRT_STEPS_CAP",
    "CutApprox",
    "cut_interval",
    "cut_extract",
    "inverse_rep",
    "inv_iterate",
    "rational_sqrt",
    "sqrt_seed",
    "sqrt_iterate",
    "inverse",
    "sqrt",
    "closure_to_data",
]
