from __future__ import annotations

import traceback
from typing import Optional


class SurrealError(Exception):
    """
    Базовое исключение для всех ошибок surreal.
    """

    pass


# -----------------------------
# Скаляры и интервалы
# -----------------------------


class EmptyInterval(SurrealError, ValueError):
    """
    Интервал пуст (lower >= upper), выбрать простейшее двоично-рациональное нельзя.
    """

    pass


class DivByZero(SurrealError, ZeroDivisionError):
    """
    Деление на ноль (скаляры, обратный элемент формы).
    """

    pass


# -----------------------------
# Формы игр и числа
# -----------------------------


class NotANumber(SurrealError, ValueError):
    """
    Форма {L|R} не является числом (нарушено L ≪ R где-то в иерархии опций).
    """

    pass


class ContextMismatch(SurrealError):
    """
    Формы из разных арен (контекстов вычисления) нельзя смешивать.
    """

    pass


# -----------------------------
# Дни и отношения порядка
# -----------------------------


class DayTooLarge(SurrealError):
    """
    Запрошенный день слишком велик для полного перебора.
    """

    pass


class NotBornWithinCap(SurrealError):
    """
    Форма не рождается ни в одном дне в пределах ограничения перебора.
    """

    pass


class NotCompatible(SurrealError):
    """
    Нарушены предусловия шага расширения порядка (Comp на Prod^O или вложенность).
    """

    pass


# -----------------------------
# Замыкания: обратный элемент и корень
# -----------------------------


class NotPositive(SurrealError, ValueError):
    """
    Операция определена только для положительных чисел.
    """

    pass


class SeedNotRational(SurrealError, ValueError):
    """
    Начальная опция корня иррациональна; нужно другое представление числа
    или явные затравки.
    """

    pass


class InvalidSeed(SurrealError, ValueError):
    """
    Явно заданные затравки корня не охватывают корень (l² < x < r² нарушено).
    """

    pass


# -----------------------------
# Нормальная форма Конвея
# -----------------------------


class NegativeOperand(SurrealError, ValueError):
    """
    Отрицательный аргумент там, где допустимы только неотрицательные.
    """

    pass


class ZeroOperand(SurrealError, ValueError):
    """
    Нулевой аргумент там, где требуется ненулевой.
    """

    pass


class NotMonomial(SurrealError, ValueError):
    """
    Точное обращение доступно только для одночленов r·ω^y.
    """

    pass


# -----------------------------
# Разбор и вычисление выражений
# -----------------------------


class ParseError(SurrealError, ValueError):
    """
    Синтаксическая ошибка с позицией (колонка с 1).
    """

    def __init__(self, message: str, column: Optional[int] = None):
        self.column = column
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if self.column is not None:
            return f"{base} (column {self.column})"
        return base


class LayerMismatch(SurrealError):
    """
    Выражение смешивает слои (ω-термы и фигурные формы) или
    операция не поддерживается на данном слое.
    """

    pass


class EvaluationError(SurrealError):
    """
    Неизвестная функция/переменная, неверная арность и т.п.
    """

    pass


class ConfigError(SurrealError):
    """
    Ошибка в конфигурации (неправильные значения, нечитаемый файл).
    """

    pass


def format_exception(exc: BaseException, include_traceback: bool = True) -> str:
    """
    Преобразует исключение в человекочитаемую строку.
    """
    if include_traceback and exc.__traceback__ is not None:
        tb = "".join(traceback.format_exception(type(exc), exc, exc.__traceback__))
        return tb.rstrip()
    return f"{exc.__class__.__name__}: {exc}"


def brief_exception(exc: BaseException) -> str:
    """
    Короткая форма: "Type: message"
    """
    return f"{exc.__class__.__name__}: {exc}"


__all__ = [
    "SurrealError",
    "EmptyInterval",
    "DivByZero",
    "NotANumber",
    "ContextMismatch",
    "DayTooLarge",
    "NotBornWithinCap",
    "NotCompatible",
    "NotPositive",
    "SeedNotRational",
    "InvalidSeed",
    "NegativeOperand",
    "ZeroOperand",
    "NotMonomial",
    "ParseError",
    "LayerMismatch",
    "EvaluationError",
    "ConfigError",
    "format_exception",
    "brief_exception",
]
