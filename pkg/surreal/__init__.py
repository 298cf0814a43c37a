"""
Surreal: точная арифметика сюрреальных чисел конечного масштаба:
формы {L|R} с каноническими представителями, перебор дней, знаковые
разложения, обратный элемент и корень через замыкания, вложения
целых/двоичных/рациональных/ординалов и нормальная форма Конвея.

Быстрый старт (CLI):
  - Вычислить выражение:
      surreal --eval "value({0|1} + {0|1})"
  - Перебор второго дня:
      surreal day 2 --format json
  - Дерево первых дней в DOT:
      surreal tree 3

Быстрый старт (библиотека):
  from surreal import evaluate
  evaluate("born({1|})")  # EvalResult(layer=GAMEFORM, payload=Ordinal 2)
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "__version__",
    "evaluate",
    "render",
]

__version__ = "0.1.0"


def evaluate(text: str, config=None):
    """
    Вычисляет одно выражение с настройками по умолчанию (или переданными).
    Возвращает EvalResult.
    """
    from .cli.evaluator import evaluate_text

    return evaluate_text(text, config)


def render(text: str, fmt: Optional[str] = None) -> str:
    """
    Вычисляет выражение и сразу печатает результат в формате fmt.
    """
    from .core.results import render_result

    return render_result(evaluate(text), fmt or "text")
