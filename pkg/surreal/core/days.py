"""
Дни рождения относительно произвольного отношения порядка в конечном масштабе:
Day(Ord, α), шаг расширения порядка по парам (α, β), неподвижная точка
No-порядка, проверка Comp, подсчет дней и экспорт дерева первых дней.

Отношение хранится как множество пар id форм одной арены.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .errors import ContextMismatch, DayTooLarge, NotBornWithinCap, NotCompatible
from .gameform import FormArena, GameForm, _born_int, default_arena, value
from .numeric import Dyadic, format_scalar
from .ordinal import Ordinal
from .signexp import SignExpansion, all_expansions, format_signs, to_dyadic
from .types import IdPair, OutputFormat


MAX_DAY = 2
# размер предыдущей стадии, при котором еще перебираем 2^n × 2^n кандидатов
MAX_STAGE = 12
BORN_CAP = 16
MAX_CANONICAL_DAY = 16
MAX_TREE_DEPTH = 8
MAX_COUNT_N = 20
MAX_BRUTE_N = 10


@dataclass(frozen=True)
class OrderRelation:
    """
    Конечное «почти No-отношение»: pairs ⊆ universe × universe.
    Пустой universe выводится из пар.
    """

    pairs: FrozenSet[IdPair] = frozenset()
    universe: FrozenSet[int] = frozenset()
    arena: FormArena = field(default_factory=default_arena, compare=False, repr=False)

    def __post_init__(self) -> None:
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        universe = frozenset(self.universe) or frozenset(i for p in pairs for i in p)
        stray = [p for p in pairs if p[0] not in universe or p[1] not in universe]
        if stray:
            raise ValueError(f"пара {stray[0]} вне universe")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "universe", universe)

    @classmethod
    def empty(cls, arena: Optional[FormArena] = None) -> "OrderRelation":
        return cls(frozenset(), frozenset(), arena or default_arena())

    def holds(self, x: GameForm, y: GameForm) -> bool:
        """
        x ≤_Ord y
        """
        return (x.id, y.id) in self.pairs

    def ll(self, left: Iterable[GameForm], right: Iterable[GameForm]) -> bool:
        """
        L ≪_Ord R: ни для каких l ∈ L, r ∈ R не выполнено r ≤_Ord l.
        """
        right_t = tuple(right)
        return all((r.id, l.id) not in self.pairs for l in left for r in right_t)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def with_pairs(self, extra: Iterable[IdPair], universe: Iterable[int] = ()) -> "OrderRelation":
        return OrderRelation(self.pairs | frozenset(extra), self.universe | frozenset(universe), self.arena)

    def without(self, pair: IdPair) -> "OrderRelation":
        return OrderRelation(self.pairs - {pair}, self.universe, self.arena)

    def restricted(self, forms: Iterable[GameForm]) -> "OrderRelation":
        ids = frozenset(f.id for f in forms)
        kept = frozenset(p for p in self.pairs if p[0] in ids and p[1] in ids)
        return OrderRelation(kept, ids, self.arena)

    def to_data(self) -> Dict[str, Any]:
        return {
            "universe": sorted(self.universe),
            "pairs": [list(p) for p in sorted(self.pairs)],
        }


def _check_arena(ord: OrderRelation, *forms: GameForm) -> None:
    for f in forms:
        if f.arena is not ord.arena:
            raise ContextMismatch("форма и отношение из разных арен")


# -----------------------------
# Day(Ord, α)
# -----------------------------


def _subsets(items: Sequence[GameForm]) -> List[Tuple[GameForm, ...]]:
    return [
        tuple(items[i] for i in range(len(items)) if mask >> i & 1)
        for mask in range(1 << len(items))
    ]


def _stage_forms(ord: OrderRelation, prev: Sequence[GameForm], filtered: bool) -> List[GameForm]:
    if len(prev) > MAX_STAGE:
        raise DayTooLarge(f"предыдущая стадия содержит {len(prev)} форм (> {MAX_STAGE})")
    arena = ord.arena
    subsets = _subsets(prev)
    out: Dict[int, GameForm] = {}
    for left in subsets:
        for right in subsets:
            if filtered and not ord.ll(left, right):
                continue
            f = arena.make(left, right)
            out[f.id] = f
    return [out[i] for i in sorted(out)]


def _stages(ord: OrderRelation, alpha: int, max_day: int) -> List[List[GameForm]]:
    if alpha < 0:
        raise ValueError("α должно быть >= 0")
    if alpha > max_day:
        raise DayTooLarge(f"день {alpha} > {max_day}: полный перебор невозможен")
    stages = [[ord.arena.zero]]
    for _ in range(alpha):
        stages.append(_stage_forms(ord, stages[-1], filtered=True))
    return stages


def day_with_relation(ord: OrderRelation, alpha: int, max_day: int = MAX_DAY) -> List[GameForm]:
    """
    Формы {L|R} с L, R ⊆ Day(α−1) и L ≪_Ord R; Day(0) = {{|}}. Кумулятивно по α.
    """
    return _stages(ord, alpha, max_day)[-1]


def candidates(ord: OrderRelation, alpha: int, max_day: int = MAX_DAY) -> List[GameForm]:
    """
    Все {L|R} с L, R ⊆ Day(α−1), без условия ≪ (для α = 0: только {|}).
    """
    stages = _stages(ord, max(alpha - 1, 0), max_day)
    if alpha == 0:
        return stages[0]
    return _stage_forms(ord, stages[-1], filtered=False)


def in_day(ord: OrderRelation, x: GameForm, alpha: int) -> bool:
    """
    x ∈ Day(Ord, α) без перебора: опции в Day(α−1) и L ≪_Ord R.
    """
    _check_arena(ord, x)
    memo: Dict[Tuple[int, int], bool] = {}

    def go(f: GameForm, a: int) -> bool:
        key = (f.id, a)
        if key in memo:
            return memo[key]
        if a == 0:
            result = f is f.arena.zero
        else:
            result = (
                _born_int(f) <= a
                and all(go(o, a - 1) for o in f.options)
                and ord.ll(f.left, f.right)
            )
        memo[key] = result
        return result

    return go(x, alpha)


def born_rel(ord: OrderRelation, x: GameForm, cap: int = BORN_CAP) -> Ordinal:
    """
    Наименьшее α с x ∈ Day(Ord, α).
    """
    for alpha in range(cap + 1):
        if in_day(ord, x, alpha):
            return Ordinal.from_int(alpha)
    raise NotBornWithinCap(f"форма не рождается до дня {cap} относительно данного порядка")


# -----------------------------
# Comp, Prod^C / Prod^O, расширение
# -----------------------------


def comparison_holds(ord: OrderRelation, x: GameForm, y: GameForm) -> bool:
    """
    L_x ≪_Ord {y}  и  {x} ≪_Ord R_y.
    """
    return ord.ll(x.left, (y,)) and ord.ll((x,), y.right)


def comp_holds(ord: OrderRelation, pairs: Iterable[IdPair]) -> bool:
    """
    Для всех (x, y) из pairs: (x, y) ∈ Ord ⇔ L_x ≪_Ord {y} ∧ {x} ≪_Ord R_y.
    """
    arena = ord.arena
    for a, b in pairs:
        x, y = arena.get(a), arena.get(b)
        if ((a, b) in ord.pairs) != comparison_holds(ord, x, y):
            return False
    return True


def _square(forms: Sequence[GameForm]) -> Set[IdPair]:
    return {(x.id, y.id) for x in forms for y in forms}


def prodC(ord: OrderRelation, alpha: int, beta: int, max_day: int = MAX_DAY) -> Set[IdPair]:
    """
    Пары из Day(α)², где (𝔟x < α ∧ 𝔟y < α), (𝔟x ≤ α ∧ 𝔟y ≤ β) или (𝔟x ≤ β ∧ 𝔟y ≤ α).
    """
    forms = day_with_relation(ord, alpha, max_day)
    born = {f.id: _born_int(f) for f in forms}
    return {
        (a, b)
        for a, b in _square(forms)
        if (born[a] < alpha and born[b] < alpha)
        or (born[a] <= alpha and born[b] <= beta)
        or (born[a] <= beta and born[b] <= alpha)
    }


def prodO(ord: OrderRelation, alpha: int, beta: int, max_day: int = MAX_DAY) -> Set[IdPair]:
    """
    Строгая версия Prod^C: (𝔟x < α ∧ 𝔟y < α), (𝔟x ≤ α ∧ 𝔟y < β) или (𝔟x < β ∧ 𝔟y ≤ α).
    Для β ≥ 1 совпадает с объединением Prod^C(α, γ) по γ < β;
    Prod^O(α, 0) = Day(α−1)².
    """
    forms = day_with_relation(ord, alpha, max_day)
    born = {f.id: _born_int(f) for f in forms}
    return {
        (a, b)
        for a, b in _square(forms)
        if (born[a] < alpha and born[b] < alpha)
        or (born[a] <= alpha and born[b] < beta)
        or (born[a] < beta and born[b] <= alpha)
    }


def extend_order(ord: OrderRelation, alpha: int, beta: int, max_day: int = MAX_DAY) -> OrderRelation:
    """
    S = R ∪ {(x, y) ∈ Prod^C(α, β) \\ Prod^O(α, β) : L_x ≪_R {y} ∧ {x} ≪_R R_y}.
    """
    if not 0 <= beta <= alpha:
        raise NotCompatible(f"нужно 0 <= β <= α, получено α={alpha}, β={beta}")
    open_pairs = prodO(ord, alpha, beta, max_day)
    if not ord.pairs <= open_pairs:
        raise NotCompatible("отношение выходит за Prod^O(α, β)")
    if not comp_holds(ord, open_pairs):
        raise NotCompatible("Comp нарушено на Prod^O(α, β)")
    arena = ord.arena
    closed = prodC(ord, alpha, beta, max_day)
    fresh = {
        (a, b)
        for a, b in closed - open_pairs
        if comparison_holds(ord, arena.get(a), arena.get(b))
    }
    universe = {f.id for f in day_with_relation(ord, alpha, max_day)}
    return ord.with_pairs(fresh, universe)


def no_order(n: int, arena: Optional[FormArena] = None, max_day: int = MAX_DAY) -> OrderRelation:
    """
    Итерация extend_order по (α, β) лексикографически, β внутри.
    """
    if n > max_day:
        raise DayTooLarge(f"no_order({n}): предел {max_day}")
    ord = OrderRelation.empty(arena)
    for alpha in range(n + 1):
        for beta in range(alpha + 1):
            ord = extend_order(ord, alpha, beta, max_day)
    return ord


# -----------------------------
# Подсчеты
# -----------------------------


def valid_pairs_formula(n: int) -> int:
    """
    (n+2)·2^{n−1}
    """
    if n < 1:
        raise ValueError("n должно быть >= 1")
    return (n + 2) << (n - 1)


def count_valid_pairs(n: int) -> int:
    """
    Пары (L, R) подмножеств цепи из n значений с max L < min R.
    Перебор по L: при пустом L годится любое R, иначе R выше max L.
    """
    if not 1 <= n <= MAX_COUNT_N:
        raise ValueError(f"n должно быть в 1..{MAX_COUNT_N}")
    total = 0
    for mask in range(1 << n):
        if mask == 0:
            total += 1 << n
        else:
            top = mask.bit_length() - 1
            total += 1 << (n - 1 - top)
    return total


def brute_force_valid_pairs(n: int) -> int:
    """
    Полный перебор 4^n пар подмножеств.
    """
    if not 1 <= n <= MAX_BRUTE_N:
        raise ValueError(f"n должно быть в 1..{MAX_BRUTE_N}")
    count = 0
    for left in range(1 << n):
        hi_left = left.bit_length() - 1
        for right in range(1 << n):
            lo_right = (right & -right).bit_length() - 1 if right else n
            if hi_left < lo_right:
                count += 1
    return count


@dataclass(frozen=True)
class DayReport:
    day_index: int
    candidate_count: int
    number_count: int
    new_class_values: FrozenSet[Dyadic]
    universe: FrozenSet[int]

    def sorted_new_values(self) -> List[Dyadic]:
        return sorted(self.new_class_values)

    def to_data(self) -> Dict[str, Any]:
        return {
            "candidates": self.candidate_count,
            "numbers": self.number_count,
            "new_values": [format_scalar(v) for v in self.sorted_new_values()],
        }

    def to_rows(self) -> List[Tuple[str, str]]:
        return [
            ("day", str(self.day_index)),
            ("candidates", str(self.candidate_count)),
            ("numbers", str(self.number_count)),
            ("new values", ", ".join(format_scalar(v) for v in self.sorted_new_values())),
        ]


def enumerate_day(n: int, arena: Optional[FormArena] = None, max_day: int = MAX_DAY) -> DayReport:
    """
    Кандидаты (2^|Day(n−1)|)², числа дня n и новые классы значений.
    """
    ord = no_order(n, arena, max_day)
    stages = _stages(ord, n, max_day)
    day = stages[-1]
    seen: Set[Dyadic] = set()
    if n > 0:
        prev = stages[-2]
        candidate_count = (1 << len(prev)) ** 2
        seen = {value(f) for f in prev}
    else:
        candidate_count = 1
    fresh = frozenset(value(f) for f in day) - seen
    return DayReport(n, candidate_count, len(day), fresh, frozenset(f.id for f in day))


def new_canonical_values(n: int) -> Set[Dyadic]:
    """
    Двоично-рациональные со знаковым разложением длины ровно n (их 2^n).
    """
    if not 0 <= n <= MAX_CANONICAL_DAY:
        raise DayTooLarge(f"n должно быть в 0..{MAX_CANONICAL_DAY}")
    return {to_dyadic(s) for s in all_expansions(n)}


# -----------------------------
# Дерево первых дней
# -----------------------------


def _node_name(s: SignExpansion) -> str:
    return "n" + format_signs(s).replace("+", "p").replace("-", "m")


def _tree_nodes(depth: int) -> List[SignExpansion]:
    if not 0 <= depth <= MAX_TREE_DEPTH:
        raise DayTooLarge(f"глубина дерева должна быть в 0..{MAX_TREE_DEPTH}")
    out: List[SignExpansion] = []
    for length in range(depth + 1):
        out.extend(all_expansions(length))
    return out


def export_tree(depth: int, fmt: Union[OutputFormat, str] = OutputFormat.DOT) -> str:
    """
    Двоичное дерево канонических значений до глубины depth, ребра помечены +/−.
    """
    fmt = OutputFormat(fmt)
    nodes = _tree_nodes(depth)
    edges = [
        (SignExpansion(s.signs[:-1]), s, s.signs[-1].value) for s in nodes if len(s) > 0
    ]
    if fmt is OutputFormat.JSON:
        data = {
            "depth": depth,
            "nodes": [
                {"id": format_signs(s), "value": format_scalar(to_dyadic(s)), "day": len(s)}
                for s in nodes
            ],
            "edges": [
                {"from": format_signs(a), "to": format_signs(b), "sign": sign} for a, b, sign in edges
            ],
        }
        return json.dumps(data, ensure_ascii=False, indent=2)
    if fmt is not OutputFormat.DOT:
        raise ValueError(f"формат {fmt.value} не поддерживается для дерева")
    lines = ["digraph days {"]
    for s in nodes:
        lines.append(f'\t"{_node_name(s)}" [label="{format_scalar(to_dyadic(s))}"];')
    for a, b, sign in edges:
        lines.append(f'\t"{_node_name(a)}" -> "{_node_name(b)}" [label="{sign}"];')
    lines.append("}")
    return "\n".join(lines)


__all__ = [
    "MAX_DAY",
    "OrderRelation",
    "day_with_relation",
    "candidates",
    "in_day",
    "born_rel",
    "comparison_holds",
    "comp_holds",
    "prodC",
    "prodO",
    "extend_order",
    "no_order",
    "valid_pairs_formula",
    "count_valid_pairs",
    "brute_force_valid_pairs",
    "DayReport",
    "enumerate_day",
    "new_canonical_values",
    "export_tree",
]
