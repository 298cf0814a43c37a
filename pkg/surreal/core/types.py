from __future__ import annotations

import enum
from typing import Tuple


# -----------------------------
# Базовые перечисления и алиасы
# -----------------------------


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        if a < b:
            return cls.LT
        if a > b:
            return cls.GT
        return cls.EQ

    @classmethod
    def from_sign(cls, s: int) -> "Ordering":
        if s < 0:
            return cls.LT
        if s > 0:
            return cls.GT
        return cls.EQ

    @property
    def symbol(self) -> str:
        return {Ordering.LT: "<", Ordering.EQ: "=", Ordering.GT: ">"}[self]

    def flipped(self) -> "Ordering":
        return Ordering(-self.value)


class Layer(enum.Enum):
    GAMEFORM = "gameform"
    SIGNEXP = "signexp"
    CNF = "cnf"
    CUT = "cut"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"
    DOT = "dot"
    TABLE = "table"


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flipped(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


# Пара (x_id, y_id) в отношении порядка
IdPair = Tuple[int, int]

SCHEMA = "surreal/1"


__all__ = [
    "Ordering",
    "Layer",
    "OutputFormat",
    "Sign",
    "IdPair",
    "SCHEMA",
]
