from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from surreal.core.embed import s_D
from surreal.core.gameform import FormArena, GameForm, value
from surreal.core.signexp import all_expansions, to_dyadic


def dyadics(max_birthday: int) -> List[Fraction]:
    return [
        to_dyadic(s).to_fraction()
        for n in range(max_birthday + 1)
        for s in all_expansions(n)
    ]


def canonical_pool(arena: FormArena, max_birthday: int) -> List[GameForm]:
    return [s_D(v, arena) for v in dyadics(max_birthday)]


def random_number_form(rng: random.Random, pool: List[GameForm], density: float = 0.5) -> GameForm:
    """
    {L|R} из опций пула с max L < min R (не обязательно канонична).
    """
    arena = pool[0].arena
    values = sorted({value(f).to_fraction() for f in pool})
    cut = rng.choice(values + [values[-1] + 1])
    above = [v for v in values if v >= cut]
    gap = rng.choice(above + [None])
    left = [f for f in pool if value(f).to_fraction() < cut and rng.random() < density]
    right = []
    if gap is not None:
        right = [f for f in pool if value(f).to_fraction() >= gap and rng.random() < density]
    return arena.make(left, right)


def random_forms(
    arena: FormArena,
    count: int,
    seed: int,
    max_birthday: int = 4,
    density: float = 0.5,
) -> List[GameForm]:
    """
    Случайные числовые формы дня рождения ≤ max_birthday: опции берутся из
    канонических форм дня ≤ max_birthday − 2 и случайных форм дня ≤ max_birthday − 1.
    """
    rng = random.Random(seed)
    base = canonical_pool(arena, max(max_birthday - 2, 0))
    inner = base + [random_number_form(rng, base, density) for _ in range(8)]
    return [random_number_form(rng, inner, density) for _ in range(count)]
