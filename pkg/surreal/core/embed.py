"""
Вложения целых, двоично-рациональных, рациональных (как конечные разрезы)
и ординалов в представления сюрреальных чисел.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from .gameform import FormArena, GameForm, _born_int, default_arena, form_to_data
from .numeric import (
    BoundedInterval,
    Dyadic,
    Scalar,
    format_scalar,
    is_dyadic,
    simplest_dyadic,
    to_fraction,
)
from .ordinal import Ordinal


MAX_INT_EMBED = 10_000


def _as_dyadic(d: Scalar) -> Dyadic:
    if isinstance(d, Dyadic):
        return d
    return Dyadic.from_fraction(Fraction(d))


# -----------------------------
# s_Z, s_D
# -----------------------------


def s_Z(i: int, arena: Optional[FormArena] = None) -> GameForm:
    """
    s_Z(0) = {|}, s_Z(i) = {s_Z(i-1)|} при i > 0, {|s_Z(i+1)} при i < 0.
    """
    arena = arena or default_arena()
    i = int(i)
    if abs(i) > MAX_INT_EMBED:
        raise ValueError(f"|{i}| > {MAX_INT_EMBED}: слишком большое целое для формы")
    cache = arena._canonical
    key = Dyadic(i)
    found = cache.get(key)
    if found is not None:
        return found
    if Dyadic(0) not in cache:
        cache[Dyadic(0)] = arena.zero
        arena.note_number(arena.zero, Dyadic(0), 0)
    step = 1 if i > 0 else -1
    cur = arena.zero
    for k in range(step, i + step, step):
        f = cache.get(Dyadic(k))
        if f is None:
            f = arena.make([cur], []) if step > 0 else arena.make([], [cur])
            cache[Dyadic(k)] = f
            arena.note_number(f, Dyadic(k), abs(k))
        cur = f
    return cur


def s_D(d: Scalar, arena: Optional[FormArena] = None) -> GameForm:
    """
    Целые: через s_Z; (2j+1)/2^{p+1} ↦ {s_D(j/2^p) | s_D((j+1)/2^p)}.
    Рекурсия по p развернута в явный стек.
    """
    arena = arena or default_arena()
    target = _as_dyadic(d)
    cache = arena._canonical
    stack: List[Dyadic] = [target]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        if cur.is_integer():
            s_Z(cur.numerator, arena)
            stack.pop()
            continue
        lo = Dyadic(cur.numerator - 1, cur.exponent)
        hi = Dyadic(cur.numerator + 1, cur.exponent)
        missing = [v for v in (lo, hi) if v not in cache]
        if missing:
            stack.extend(missing)
            continue
        f = arena.make([cache[lo]], [cache[hi]])
        cache[cur] = f
        arena.note_number(f, cur, 1 + max(_born_int(cache[lo]), _born_int(cache[hi])))
        stack.pop()
    return cache[target]


# -----------------------------
# s_R: рациональные как разрезы
# -----------------------------


@dataclass
class CutNumber:
    """
    Конечное приближение разреза
    {s_D(⌈q·2ⁿ−1⌉/2ⁿ) | s_D(⌊q·2ⁿ+1⌋/2ⁿ)}, n = 0..depth.
    """

    target: Fraction
    depth: int
    left_values: Tuple[Fraction, ...]
    right_values: Tuple[Fraction, ...]
    arena: FormArena = field(repr=False, compare=False, default_factory=default_arena)

    @property
    def left_options(self) -> Tuple[GameForm, ...]:
        return tuple(s_D(v, self.arena) for v in sorted(set(self.left_values)))

    @property
    def right_options(self) -> Tuple[GameForm, ...]:
        return tuple(s_D(v, self.arena) for v in sorted(set(self.right_values)))

    def bracket(self) -> BoundedInterval:
        return BoundedInterval(max(self.left_values), min(self.right_values))

    def simplest(self) -> Dyadic:
        return simplest_dyadic(self.bracket())

    def form(self) -> GameForm:
        return self.arena.make(self.left_options, self.right_options)

    def deepen(self, extra: int = 1) -> "CutNumber":
        return cut_number(self.target, self.depth + extra, self.arena)

    def to_data(self) -> Dict[str, Any]:
        b = self.bracket()
        return {
            "target": format_scalar(self.target),
            "depth": self.depth,
            "left": [format_scalar(v) for v in self.left_values],
            "right": [format_scalar(v) for v in self.right_values],
            "interval": [format_scalar(b.lower), format_scalar(b.upper)],
            "exact": False,
        }


def cut_number(q: Union[Fraction, int], depth: int, arena: Optional[FormArena] = None) -> CutNumber:
    """
    Формула разреза для любого рационального q, в том числе двоичного.
    """
    arena = arena or default_arena()
    q = Fraction(q)
    if depth < 0:
        raise ValueError("depth должна быть >= 0")
    left: List[Fraction] = []
    right: List[Fraction] = []
    for n in range(depth + 1):
        scale = 1 << n
        left.append(Fraction(math.ceil(q * scale - 1), scale))
        right.append(Fraction(math.floor(q * scale + 1), scale))
    return CutNumber(q, depth, tuple(left), tuple(right), arena)


def s_R(q: Union[Fraction, int, Dyadic], depth: int, arena: Optional[FormArena] = None) -> Union[GameForm, CutNumber]:
    """
    Для двоичных q: ровно s_D(q) (s_R|_D = s_D), иначе разрез глубины depth.
    """
    qf = to_fraction(q)
    if is_dyadic(qf):
        return s_D(qf, arena)
    return cut_number(qf, depth, arena)


# -----------------------------
# Ординалы
# -----------------------------


def s_On(alpha: Ordinal, arena: Optional[FormArena] = None):
    """
    Конечный α ↦ s_Z(α); бесконечный ↦ CnfSurreal Σ ω^{s_On(α_i)}·n_i.
    """
    if alpha.is_finite():
        return s_Z(alpha.to_int(), arena)
    from .cnf import ordinal_to_cnf

    return ordinal_to_cnf(alpha)


def is_star_ordinal(x: GameForm) -> bool:
    """
    *ординал: правые множества пусты на всех уровнях.
    """
    seen: Dict[int, bool] = {}
    stack = [x]
    while stack:
        f = stack.pop()
        if f.id in seen:
            continue
        if f.right:
            return False
        seen[f.id] = True
        stack.extend(f.left)
    return True


def embedding_to_data(x: Union[GameForm, CutNumber]) -> Dict[str, Any]:
    if isinstance(x, CutNumber):
        return x.to_data()
    return form_to_data(x)


__all__ = [
    "MAX_INT_EMBED",
    "s_Z",
    "s_D",
    "CutNumber",
    "cut_number",
    "s_R",
    "s_On",
    "is_star_ordinal",
    "embedding_to_data",
]
