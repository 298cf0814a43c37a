from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from .closure import CutApprox
from .cnf import CnfSurreal, format_cnf
from .days import DayReport
from .embed import CutNumber
from .gameform import GameForm, form_to_data, form_to_dot, form_to_text, is_canonical, is_number, value
from .numeric import Dyadic, format_scalar
from .ordinal import Ordinal, format_ordinal
from .signexp import SignExpansion, format_signs
from .types import SCHEMA, Layer, Ordering, OutputFormat


@dataclass
class EvalResult:
    """
    Результат вычисления выражения.
    layer:
      - GAMEFORM: формы {L|R} и скаляры, полученные из них
      - SIGNEXP: знаковые разложения
      - CNF: нормальная форма Конвея
      - CUT: приближения (разрезы и итерации замыканий)
    provenance: какие операции выполнялись и с какими бюджетами.
    """

    layer: Layer
    payload: Any
    provenance: List[str] = field(default_factory=list)


# -----------------------------
# Текст
# -----------------------------


def _cut_text(left: Sequence[Fraction], right: Sequence[Fraction], lo: Any, hi: Any, exact: bool) -> str:
    l = ",".join(format_scalar(v) for v in left)
    r = ",".join(format_scalar(v) for v in right)
    lo_s = "-inf" if lo is None else format_scalar(lo)
    hi_s = "+inf" if hi is None else format_scalar(hi)
    tag = "exact" if exact else "approx"
    return f"{{{l}|{r}}} in ({lo_s}, {hi_s}) [{tag}]"


def payload_to_text(p: Any) -> str:
    if isinstance(p, GameForm):
        if is_canonical(p):
            return format_scalar(value(p))
        return form_to_text(p)
    if isinstance(p, (Dyadic, Fraction)):
        return format_scalar(p)
    if isinstance(p, bool):
        return "true" if p else "false"
    if isinstance(p, Ordinal):
        return format_ordinal(p)
    if isinstance(p, CnfSurreal):
        return format_cnf(p)
    if isinstance(p, SignExpansion):
        return format_signs(p) or "(empty)"
    if isinstance(p, Ordering):
        return p.symbol
    if isinstance(p, CutApprox):
        b = p.interval()
        return _cut_text(p.left_values, p.right_values, b.lower, b.upper, p.exact)
    if isinstance(p, CutNumber):
        b = p.bracket()
        return _cut_text(p.left_values, p.right_values, b.lower, b.upper, False)
    if isinstance(p, DayReport):
        vals = ", ".join(format_scalar(v) for v in p.sorted_new_values())
        return (
            f"day {p.day_index}: {p.candidate_count} candidates, "
            f"{p.number_count} numbers, new values: {vals}"
        )
    return str(p)


# -----------------------------
# JSON
# -----------------------------


def payload_to_data(p: Any) -> Any:
    if isinstance(p, GameForm):
        d: Dict[str, Any] = {"text": form_to_text(p), "form": form_to_data(p)}
        if is_number(p):
            d["value"] = format_scalar(value(p))
        return d
    if isinstance(p, CnfSurreal):
        return {
            "text": format_cnf(p),
            "terms": [[format_cnf(e), format_scalar(c)] for e, c in p.terms],
        }
    if isinstance(p, (CutApprox, CutNumber, DayReport)):
        return p.to_data()
    if isinstance(p, bool):
        return p
    return payload_to_text(p)


def result_to_data(result: EvalResult) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "layer": result.layer.value,
        "result": payload_to_data(result.payload),
        "provenance": list(result.provenance),
    }


# -----------------------------
# Таблица
# -----------------------------


def _rows(p: Any) -> List[Tuple[str, str]]:
    if isinstance(p, DayReport):
        return p.to_rows()
    if isinstance(p, (CutApprox, CutNumber)):
        rows = [("L", format_scalar(v)) for v in p.left_values]
        rows += [("R", format_scalar(v)) for v in p.right_values]
        return rows
    if isinstance(p, CnfSurreal):
        return [(format_cnf(e), format_scalar(c)) for e, c in p.terms]
    return [("result", payload_to_text(p))]


def format_table(rows: Sequence[Tuple[str, str]]) -> str:
    if not rows:
        return ""
    width = max(len(k) for k, _v in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# -----------------------------
# Главная функция
# -----------------------------


def render_result(result: EvalResult, fmt: Union[OutputFormat, str] = OutputFormat.TEXT) -> str:
    """
    EvalResult → текст в выбранном формате.
    DOT доступен для форм; прочие значения выводятся текстом.
    """
    fmt = OutputFormat(fmt)
    p = result.payload
    if fmt is OutputFormat.JSON:
        return json.dumps(result_to_data(result), ensure_ascii=False)
    if fmt is OutputFormat.DOT:
        if isinstance(p, GameForm):
            return form_to_dot(p)
        return payload_to_text(p)
    if fmt is OutputFormat.TABLE:
        return format_table(_rows(p))
    return payload_to_text(p)


__all__ = [
    "EvalResult",
    "payload_to_text",
    "payload_to_data",
    "result_to_data",
    "format_table",
    "render_result",
]
