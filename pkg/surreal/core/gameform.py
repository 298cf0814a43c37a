"""
Ядро Конвея: интернированные наследственно конечные формы {L|R},
рекурсии Concept/Comparison, эквивалентность, полевые операции,
день рождения, точное значение и канонизация.

Все формы живут в арене (FormArena): структурно равные формы получают один
и тот же id, поэтому равенство «=» из аксиом поля проверяется как `is`.
Таблицы мемоизации leq/add/mul принадлежат той же арене.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import ContextMismatch, NotANumber
from .numeric import BoundedInterval, Dyadic, format_scalar, simplest_dyadic
from .ordinal import Ordinal
from .types import IdPair


class GameForm:
    """
    Пара множеств опций {L|R}. Создается только через FormArena.make.
    """

    __slots__ = ("id", "left", "right", "arena")

    def __init__(
        self,
        arena: "FormArena",
        form_id: int,
        left: Tuple["GameForm", ...],
        right: Tuple["GameForm", ...],
    ) -> None:
        self.arena = arena
        self.id = form_id
        self.left = left
        self.right = right

    @property
    def options(self) -> Tuple["GameForm", ...]:
        return self.left + self.right

    def __hash__(self) -> int:
        return hash((id(self.arena), self.id))

    def __eq__(self, other: object) -> bool:
        return self is other

    def __repr__(self) -> str:
        return f"GameForm#{self.id}{form_to_text(self, compact=False)}"


class FormArena:
    """
    Контекст вычислений: интернирование форм и кэши операций.
    Однопоточный; разные арены независимы.
    """

    def __init__(self) -> None:
        self._forms: List[GameForm] = []
        self._by_key: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], GameForm] = {}
        self._leq: Dict[IdPair, bool] = {}
        self._is_number: Dict[int, bool] = {}
        self._neg: Dict[int, GameForm] = {}
        self._add: Dict[IdPair, GameForm] = {}
        self._mul: Dict[IdPair, GameForm] = {}
        self._value: Dict[int, Dyadic] = {}
        self._born: Dict[int, int] = {}
        # канонические формы s_D(d), заполняются модулем embed
        self._canonical: Dict[Dyadic, GameForm] = {}
        self.zero = self.make((), ())

    def make(self, left: Iterable[GameForm] = (), right: Iterable[GameForm] = ()) -> GameForm:
        left_t = self._dedup(left)
        right_t = self._dedup(right)
        key = (tuple(f.id for f in left_t), tuple(f.id for f in right_t))
        found = self._by_key.get(key)
        if found is not None:
            return found
        form = GameForm(self, len(self._forms), left_t, right_t)
        self._forms.append(form)
        self._by_key[key] = form
        return form

    def _dedup(self, forms: Iterable[GameForm]) -> Tuple[GameForm, ...]:
        uniq: Dict[int, GameForm] = {}
        for f in forms:
            if f.arena is not self:
                raise ContextMismatch("опция принадлежит другой арене")
            uniq[f.id] = f
        return tuple(uniq[i] for i in sorted(uniq))

    def note_number(self, form: GameForm, v: Dyadic, born: int) -> None:
        """
        Значение и день рождения канонической формы, известные при ее построении.
        """
        self._is_number[form.id] = True
        self._value[form.id] = v
        self._born[form.id] = born

    def get(self, form_id: int) -> GameForm:
        return self._forms[form_id]

    def __len__(self) -> int:
        return len(self._forms)

    def __iter__(self):
        return iter(list(self._forms))

    def stats(self) -> Dict[str, int]:
        return {
            "forms": len(self._forms),
            "leq": len(self._leq),
            "add": len(self._add),
            "mul": len(self._mul),
            "value": len(self._value),
        }


_DEFAULT_ARENA: Optional[FormArena] = None


def default_arena() -> FormArena:
    global _DEFAULT_ARENA
    if _DEFAULT_ARENA is None:
        _DEFAULT_ARENA = FormArena()
    return _DEFAULT_ARENA


def _arena_of(*forms: GameForm) -> FormArena:
    arena = forms[0].arena
    for f in forms[1:]:
        if f.arena is not arena:
            raise ContextMismatch("формы из разных арен")
    return arena


# -----------------------------
# Обход без рекурсии
# -----------------------------


def _postorder(x: GameForm, done: Callable[[GameForm], bool]) -> List[GameForm]:
    """
    x и его потомки, кроме уже готовых (done), дети раньше родителей.
    """
    order: List[GameForm] = []
    seen: Set[int] = set()
    stack: List[Tuple[GameForm, bool]] = [(x, False)]
    while stack:
        f, expanded = stack.pop()
        if expanded:
            order.append(f)
            continue
        if f.id in seen or done(f):
            continue
        seen.add(f.id)
        stack.append((f, True))
        stack.extend((o, False) for o in f.options if o.id not in seen)
    return order


def _analyze(x: GameForm) -> None:
    """
    Заполняет таблицы числа, дня рождения и значения для x и всех его потомков.
    """
    arena = x.arena
    if x.id in arena._is_number:
        return
    for f in _postorder(x, lambda g: g.id in arena._is_number):
        arena._born[f.id] = 1 + max((arena._born[o.id] for o in f.options), default=-1)
        num = all(arena._is_number[o.id] for o in f.options)
        lo = hi = None
        if num:
            # для чисел L ≪ R сводится к max L < min R
            lo = max((arena._value[l.id].to_fraction() for l in f.left), default=None)
            hi = min((arena._value[r.id].to_fraction() for r in f.right), default=None)
            num = lo is None or hi is None or lo < hi
        arena._is_number[f.id] = num
        if num:
            arena._value[f.id] = simplest_dyadic(BoundedInterval(lo, hi))


# -----------------------------
# Concept / Comparison
# -----------------------------


def leq(x: GameForm, y: GameForm) -> bool:
    """
    x ≤ y  ⇔  y не ≤ ни одного x^L  и  ни один y^R не ≤ x.
    Для двух чисел достаточно сравнить значения.
    """
    arena = _arena_of(x, y)
    if is_number(x) and is_number(y):
        return arena._value[x.id] <= arena._value[y.id]
    key = (x.id, y.id)
    cached = arena._leq.get(key)
    if cached is not None:
        return cached
    result = not any(leq(y, xl) for xl in x.left) and not any(
        leq(yr, x) for yr in y.right
    )
    arena._leq[key] = result
    return result


def lt(x: GameForm, y: GameForm) -> bool:
    return leq(x, y) and not leq(y, x)


def ll(left: Iterable[GameForm], right: Iterable[GameForm]) -> bool:
    """
    L ≪ R: для всех l ∈ L, r ∈ R выполнено r ≰ l.
    """
    right_t = tuple(right)
    return all(not leq(r, l) for l in left for r in right_t)


def is_number(x: GameForm) -> bool:
    _analyze(x)
    return x.arena._is_number[x.id]


def equiv(x: GameForm, y: GameForm) -> bool:
    return leq(x, y) and leq(y, x)


def _require_number(x: GameForm) -> None:
    if not is_number(x):
        raise NotANumber(f"{form_to_text(x, compact=False)} не является числом")


# -----------------------------
# Полевые операции
# -----------------------------


def neg(x: GameForm) -> GameForm:
    """
    −x = {−x^R | −x^L}
    """
    arena = x.arena
    memo = arena._neg
    if x.id in memo:
        return memo[x.id]
    for f in _postorder(x, lambda g: g.id in memo):
        result = arena.make([memo[r.id] for r in f.right], [memo[l.id] for l in f.left])
        memo[f.id] = result
        memo.setdefault(result.id, f)
    return memo[x.id]


def add(x: GameForm, y: GameForm) -> GameForm:
    """
    x + y = {x^L+y, x+y^L | x^R+y, x+y^R}

    Рекурсия по парам развернута в явный стек.
    """
    arena = _arena_of(x, y)
    memo = arena._add
    stack: List[Tuple[GameForm, GameForm]] = [(x, y)]
    while stack:
        a, b = stack[-1]
        if (a.id, b.id) in memo:
            stack.pop()
            continue
        left_deps = [(al, b) for al in a.left] + [(a, bl) for bl in b.left]
        right_deps = [(ar, b) for ar in a.right] + [(a, br) for br in b.right]
        missing = [p for p in left_deps + right_deps if (p[0].id, p[1].id) not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo[(a.id, b.id)] = arena.make(
            [memo[(p.id, q.id)] for p, q in left_deps],
            [memo[(p.id, q.id)] for p, q in right_deps],
        )
        stack.pop()
    return memo[(x.id, y.id)]


def sub(x: GameForm, y: GameForm) -> GameForm:
    return add(x, neg(y))


def _mul_option(x: GameForm, y: GameForm, a: GameForm, b: GameForm, numbers: bool) -> GameForm:
    # a·y + x·b − a·b
    if not numbers:
        return sub(add(mul(a, y), mul(x, b)), mul(a, b))
    # на числах опция заменяется каноническим представителем своего класса
    p, q, r = canonicalize(mul(a, y)), canonicalize(mul(x, b)), canonicalize(mul(a, b))
    return canonicalize(sub(add(p, q), r))


def mul(x: GameForm, y: GameForm) -> GameForm:
    """
    x·y = {x^L·y + x·y^L − x^L·y^L, x^R·y + x·y^R − x^R·y^R |
           x^L·y + x·y^R − x^L·y^R, x^R·y + x·y^L − x^R·y^L}

    Для чисел опции заменяются каноническими формами: x·y = y·x структурно,
    x·1 = x структурно только для канонических x, для прочих чисел с точностью до ≈.
    """
    arena = _arena_of(x, y)
    key = (x.id, y.id)
    cached = arena._mul.get(key)
    if cached is not None:
        return cached
    numbers = is_number(x) and is_number(y)

    def opts(xs: Sequence[GameForm], ys: Sequence[GameForm]) -> List[GameForm]:
        return [_mul_option(x, y, a, b, numbers) for a in xs for b in ys]

    left = opts(x.left, y.left) + opts(x.right, y.right)
    right = opts(x.left, y.right) + opts(x.right, y.left)
    result = arena.make(left, right)
    arena._mul[key] = result
    return result


# -----------------------------
# День рождения, значение, канонизация
# -----------------------------


def _born_int(x: GameForm) -> int:
    _analyze(x)
    return x.arena._born[x.id]


def born_form(x: GameForm) -> Ordinal:
    """
    Для конечных форм: 0 для {|}, иначе 1 + максимум по опциям.
    """
    return Ordinal.from_int(_born_int(x))


def option_interval(x: GameForm) -> BoundedInterval:
    """
    (max значений левых опций, min значений правых опций).
    """
    _require_number(x)
    lo = max((value(l).to_fraction() for l in x.left), default=None)
    hi = min((value(r).to_fraction() for r in x.right), default=None)
    return BoundedInterval(lo, hi)


def value(x: GameForm) -> Dyadic:
    """
    Простейшее двоично-рациональное строго между опциями.
    """
    _require_number(x)
    return x.arena._value[x.id]


def canonicalize(x: GameForm) -> GameForm:
    """
    Единственный представитель ≈-класса: s_D(value(x)).
    """
    from .embed import s_D

    return s_D(value(x), arena=x.arena)


def is_canonical(x: GameForm) -> bool:
    return is_number(x) and canonicalize(x) is x


# -----------------------------
# Текст / JSON / DOT
# -----------------------------


def _sorted_for_display(forms: Sequence[GameForm]) -> List[GameForm]:
    def key(f: GameForm):
        if is_number(f):
            return (0, value(f).to_fraction(), f.id)
        return (1, 0, f.id)

    return sorted(forms, key=key)


def form_to_text(x: GameForm, compact: bool = True) -> str:
    """
    `{a,b|c}`; в компактном режиме канонические опции печатаются значением.
    """
    texts: Dict[int, str] = {}

    def as_value(f: GameForm) -> bool:
        return compact and f is not x and is_canonical(f)

    def side(forms: Sequence[GameForm]) -> str:
        ordered = _sorted_for_display(forms) if compact else list(forms)
        return ",".join(format_scalar(value(f)) if as_value(f) else texts[f.id] for f in ordered)

    for f in _postorder(x, lambda g: g.id in texts or as_value(g)):
        texts[f.id] = "{" + side(f.left) + "|" + side(f.right) + "}"
    return texts[x.id]


def form_to_data(x: GameForm) -> Dict[str, Any]:
    data: Dict[int, Dict[str, Any]] = {}
    for f in _postorder(x, lambda g: g.id in data):
        data[f.id] = {
            "left": [data[o.id] for o in f.left],
            "right": [data[o.id] for o in f.right],
        }
    return data[x.id]


def form_from_data(data: Any, arena: Optional[FormArena] = None) -> GameForm:
    arena = arena or default_arena()
    if not isinstance(data, dict):
        raise ValueError("Ожидался объект {'left': [...], 'right': [...]}")
    left = [form_from_data(d, arena) for d in data.get("left", [])]
    right = [form_from_data(d, arena) for d in data.get("right", [])]
    return arena.make(left, right)


def form_to_json(x: GameForm) -> str:
    return json.dumps(form_to_data(x), ensure_ascii=False)


def form_from_json(text: str, arena: Optional[FormArena] = None) -> GameForm:
    return form_from_data(json.loads(text), arena)


def form_to_dot(x: GameForm, name: str = "form") -> str:
    """
    DAG формы для graphviz: узлы: интернированные формы, ребра L/R.
    """
    lines = [f"digraph {name} {{"]
    seen: Dict[int, GameForm] = {}
    stack = [x]
    while stack:
        f = stack.pop()
        if f.id in seen:
            continue
        seen[f.id] = f
        stack.extend(f.options)
    for fid in sorted(seen):
        f = seen[fid]
        label = format_scalar(value(f)) if is_number(f) else form_to_text(f, compact=False)
        shape = "circle" if is_number(f) else "box"
        lines.append(f'\t"{fid}" [label="{label}", shape={shape}];')
    for fid in sorted(seen):
        f = seen[fid]
        for l in f.left:
            lines.append(f'\t"{fid}" -> "{l.id}" [label="L"];')
        for r in f.right:
            lines.append(f'\t"{fid}" -> "{r.id}" [label="R", style=dashed];')
    lines.append("}")
    return "\n".join(lines)


__all__ = [
    "GameForm",
    "FormArena",
    "default_arena",
    "leq",
    "lt",
    "ll",
    "is_number",
    "equiv",
    "neg",
    "add",
    "sub",
    "mul",
    "born_form",
    "option_interval",
    "value",
    "canonicalize",
    "is_canonical",
    "form_to_text",
    "form_to_data",
    "form_from_data",
    "form_to_json",
    "form_from_json",
    "form_to_dot",
]
