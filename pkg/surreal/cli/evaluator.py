"""
Вычисление выражений на двух слоях: формы {L|R} (с приближениями для
деления, корня и недвоичных литералов) и нормальная форма Конвея с ω.
Слой выбирается по тексту выражения; смешивание: LayerMismatch.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..core import closure
from ..core.closure import CutApprox
from ..core.cnf import (
    OMEGA,
    CnfSurreal,
    cnf_add,
    cnf_cmp,
    cnf_const,
    cnf_from_form,
    cnf_mul,
    cnf_neg,
    cnf_sub,
    mono_inverse,
    omega_pow,
)
from ..core.config import Config
from ..core.embed import CutNumber, s_D, s_R
from ..core.errors import DivByZero, EvaluationError, LayerMismatch, NotANumber
from ..core.gameform import (
    FormArena,
    GameForm,
    add,
    born_form,
    canonicalize,
    form_to_text,
    is_number,
    leq,
    mul,
    neg,
    sub,
    value,
)
from ..core.numeric import Dyadic, is_dyadic
from ..core.ordinal import Ordinal
from ..core.results import EvalResult
from ..core.signexp import SignExpansion, from_dyadic, from_form
from ..core.types import Layer
from .expr import (
    BinOp,
    Brace,
    Call,
    Expr,
    Let,
    Neg,
    Num,
    Omega,
    Statement,
    Var,
    free_names,
    mentions_brace,
    mentions_omega,
    parse,
)

MAX_POWER = 16


def layer_of(payload: Any) -> Layer:
    if isinstance(payload, CnfSurreal):
        return Layer.CNF
    if isinstance(payload, SignExpansion):
        return Layer.SIGNEXP
    if isinstance(payload, (CutApprox, CutNumber)):
        return Layer.CUT
    return Layer.GAMEFORM


_LAYER_NAMES = {
    Layer.GAMEFORM: "форма {L|R}",
    Layer.CNF: "значение КНФ",
    Layer.CUT: "конечное приближение (слой cut)",
    Layer.SIGNEXP: "знаковое разложение",
}


def describe_layer(payload: Any) -> str:
    if isinstance(payload, (Dyadic, Fraction)):
        return "число-результат value(...)"
    if isinstance(payload, Ordinal):
        return "ординал-результат born(...)"
    if not isinstance(payload, (GameForm, CnfSurreal, SignExpansion, CutApprox, CutNumber)):
        return "результат сравнения"
    return _LAYER_NAMES[layer_of(payload)]


class Evaluator:
    """
    Контекст вычислений одной сессии: арена форм, переменные `let`, бюджеты.
    """

    def __init__(self, config: Optional[Config] = None, arena: Optional[FormArena] = None) -> None:
        self.config = config or Config()
        self.arena = arena or FormArena()
        self.variables: Dict[str, EvalResult] = {}
        self._provenance: List[str] = []
        self._functions: Dict[str, Callable[..., Any]] = {
            "born": self._fn_born,
            "value": self._fn_value,
            "sign": self._fn_sign,
            "cnf": self._fn_cnf,
            "simplify": self._fn_simplify,
            "cmp": self._fn_cmp,
            "sqrt": self._fn_sqrt,
            "inv": self._fn_inv,
        }

    # --- вход ---

    def execute(self, stmt: Statement) -> Tuple[Optional[str], EvalResult]:
        """
        Выполняет оператор; для `let` возвращает имя связанной переменной.
        """
        if isinstance(stmt, Let):
            result = self.evaluate(stmt.expr)
            self.variables[stmt.name] = result
            return stmt.name, result
        return None, self.evaluate(stmt)

    def evaluate(self, e: Expr) -> EvalResult:
        self._provenance = []
        layer = self._static_layer(e)
        self._note(f"layer={layer.value}")
        try:
            if layer is Layer.CNF:
                payload = self._eval_cnf(e)
            else:
                payload = self._eval_form(e)
        except RecursionError:
            raise EvaluationError(
                "формы слишком глубоки для поэлементной арифметики; используйте слой КНФ"
            ) from None
        return EvalResult(layer_of(payload), payload, list(self._provenance))

    def _note(self, s: str) -> None:
        if s not in self._provenance:
            self._provenance.append(s)

    def _static_layer(self, e: Expr) -> Layer:
        w, b = self._on_cnf(e), mentions_brace(e)
        if w and b:
            raise LayerMismatch("выражение смешивает ω-термы и формы {L|R}")
        return Layer.CNF if w else Layer.GAMEFORM

    def _on_cnf(self, e: Expr) -> bool:
        """
        ω в тексте или переменная, связанная со значением КНФ.
        """
        if mentions_omega(e):
            return True
        for name in free_names(e):
            bound = self.variables.get(name)
            if bound is not None and isinstance(bound.payload, CnfSurreal):
                return True
        return False

    def _lookup(self, name: str) -> Any:
        found = self.variables.get(name)
        if found is None:
            raise EvaluationError(f"Неизвестная переменная: {name}")
        return found.payload

    # -----------------------------
    # Слой форм
    # -----------------------------

    def _form(self, e: Expr) -> GameForm:
        v = self._eval_form(e)
        if isinstance(v, GameForm):
            return v
        if isinstance(v, CnfSurreal):
            raise LayerMismatch("ω-значение в выражении над формами")
        raise LayerMismatch(f"ожидалась форма, получено {describe_layer(v)}")

    def _literal(self, q: Fraction) -> Any:
        if is_dyadic(q):
            return s_D(q, self.arena)
        depth = self.config.cut_depth
        self._note(f"s_R(depth={depth})")
        return s_R(q, depth, self.arena)

    def _eval_form(self, e: Expr) -> Any:
        if isinstance(e, Num):
            return self._literal(e.value)
        if isinstance(e, Var):
            return self._lookup(e.name)
        if isinstance(e, Brace):
            x = self.arena.make([self._form(a) for a in e.left], [self._form(a) for a in e.right])
            if not is_number(x):
                raise NotANumber(f"{form_to_text(x, compact=False)} не является числом")
            return x
        if isinstance(e, Neg):
            return neg(self._form(e.operand))
        if isinstance(e, BinOp):
            return self._form_binop(e)
        if isinstance(e, Call):
            return self._call(e)
        raise LayerMismatch(f"узел {type(e).__name__} недоступен на слое форм")

    def _form_binop(self, e: BinOp) -> Any:
        if e.op == "^":
            return self._form_power(e)
        a = self._form(e.left)
        if e.op == "/":
            return self._divide(a, self._form(e.right))
        b = self._form(e.right)
        if e.op == "+":
            return add(a, b)
        if e.op == "-":
            return sub(a, b)
        return mul(a, b)

    def _divide(self, a: GameForm, b: GameForm) -> Any:
        steps = self.config.steps_for(closure.INVERSE)
        self._note(f"inv(steps={steps})")
        inv = closure.inverse(b, steps)
        if isinstance(inv, GameForm):
            return mul(a, inv)
        va = value(a)
        if va == 0:
            return self.arena.zero
        return inv.scaled(va.to_fraction())

    def _int_exponent(self, exponent: Any) -> int:
        if isinstance(exponent, GameForm):
            d = value(exponent).to_fraction()
        elif isinstance(exponent, CnfSurreal) and exponent.is_constant():
            d = exponent.constant_value()
        else:
            raise EvaluationError("показатель степени должен быть целым")
        if d != int(d) or abs(int(d)) > MAX_POWER:
            raise EvaluationError(f"показатель степени должен быть целым в пределах ±{MAX_POWER}")
        return int(d)

    def _form_power(self, e: BinOp) -> Any:
        base = self._form(e.left)
        n = self._int_exponent(self._form(e.right))
        if n == 0:
            return s_D(1, self.arena)
        acc = base
        for _ in range(abs(n) - 1):
            acc = mul(acc, base)
        if n < 0:
            return self._divide(s_D(1, self.arena), acc)
        return acc

    # -----------------------------
    # Слой КНФ
    # -----------------------------

    def _cnf(self, e: Expr) -> CnfSurreal:
        v = self._eval_cnf(e)
        if isinstance(v, CnfSurreal):
            return v
        if isinstance(v, GameForm) and is_number(v):
            return cnf_from_form(v)
        raise LayerMismatch(f"ожидалось значение КНФ, получено {describe_layer(v)}")

    def _eval_cnf(self, e: Expr) -> Any:
        if isinstance(e, Num):
            return cnf_const(e.value)
        if isinstance(e, Omega):
            return OMEGA
        if isinstance(e, Var):
            v = self._lookup(e.name)
            if isinstance(v, GameForm):
                raise LayerMismatch(f"переменная {e.name} хранит форму, а выражение на слое КНФ")
            return v
        if isinstance(e, Neg):
            return cnf_neg(self._cnf(e.operand))
        if isinstance(e, BinOp):
            return self._cnf_binop(e)
        if isinstance(e, Call):
            return self._call(e)
        raise LayerMismatch(f"узел {type(e).__name__} недоступен на слое КНФ")

    def _cnf_binop(self, e: BinOp) -> CnfSurreal:
        if e.op == "^":
            if isinstance(e.left, Omega):
                return omega_pow(self._cnf(e.right))
            base = self._cnf(e.left)
            n = self._int_exponent(self._cnf(e.right))
            acc = cnf_const(1)
            for _ in range(abs(n)):
                acc = cnf_mul(acc, base)
            return mono_inverse(acc) if n < 0 else acc
        a, b = self._cnf(e.left), self._cnf(e.right)
        if e.op == "+":
            return cnf_add(a, b)
        if e.op == "-":
            return cnf_sub(a, b)
        if e.op == "*":
            return cnf_mul(a, b)
        if b.is_zero():
            raise DivByZero("деление на ноль")
        return cnf_mul(a, mono_inverse(b))

    # -----------------------------
    # Функции
    # -----------------------------

    def _arg(self, e: Expr) -> Any:
        if self._on_cnf(e):
            return self._eval_cnf(e)
        return self._eval_form(e)

    def _call(self, e: Call) -> Any:
        fn = self._functions.get(e.name)
        if fn is None:
            raise EvaluationError(f"Неизвестная функция: {e.name}")
        self._note(e.name)
        return fn(*e.args)

    def _arity(self, name: str, args: Tuple[Expr, ...], lo: int, hi: int) -> None:
        if not lo <= len(args) <= hi:
            want = str(lo) if lo == hi else f"{lo}..{hi}"
            raise EvaluationError(f"{name}: ожидалось аргументов {want}, получено {len(args)}")

    def _steps_arg(self, args: Tuple[Expr, ...], kind: str) -> int:
        if len(args) < 2:
            return self.config.steps_for(kind)
        s = args[1]
        if not isinstance(s, Num) or s.value.denominator != 1 or s.value < 0:
            raise EvaluationError("число шагов должно быть целым литералом >= 0")
        cap = self.config.inv_steps_cap if kind == closure.INVERSE else self.config.sqrt_steps_cap
        if s.value > cap:
            raise EvaluationError(f"число шагов {s.value} превышает предел {cap}")
        return int(s.value)

    def _fn_born(self, *args: Expr) -> Any:
        self._arity("born", args, 1, 1)
        x = self._arg(args[0])
        if not isinstance(x, GameForm):
            raise LayerMismatch("born определен для форм конечного дня рождения")
        return born_form(x)

    def _fn_value(self, *args: Expr) -> Any:
        self._arity("value", args, 1, 1)
        x = self._arg(args[0])
        if isinstance(x, GameForm):
            return value(x)
        if isinstance(x, CnfSurreal) and x.is_constant():
            return x.constant_value()
        if isinstance(x, CutApprox) and x.exact:
            return x.extract()
        raise LayerMismatch(f"value недоступно: {describe_layer(x)} без точного значения")

    def _fn_sign(self, *args: Expr) -> Any:
        self._arity("sign", args, 1, 1)
        x = self._arg(args[0])
        if isinstance(x, GameForm):
            return from_form(x)
        if isinstance(x, CnfSurreal) and x.is_constant() and is_dyadic(x.constant_value()):
            return from_dyadic(x.constant_value())
        raise LayerMismatch("знаковое разложение доступно только для двоичных значений")

    def _fn_cnf(self, *args: Expr) -> Any:
        self._arity("cnf", args, 1, 1)
        x = self._arg(args[0])
        if isinstance(x, CnfSurreal):
            return x
        if isinstance(x, GameForm):
            return cnf_from_form(x)
        raise LayerMismatch(f"cnf недоступно: {describe_layer(x)}")

    def _fn_simplify(self, *args: Expr) -> Any:
        self._arity("simplify", args, 1, 1)
        x = self._arg(args[0])
        if isinstance(x, GameForm):
            return canonicalize(x)
        if isinstance(x, CutApprox) and x.exact:
            return s_D(x.extract(), self.arena)
        return x

    def _fn_cmp(self, *args: Expr) -> Any:
        self._arity("cmp", args, 2, 2)
        a, b = self._arg(args[0]), self._arg(args[1])
        if isinstance(a, GameForm) and isinstance(b, GameForm):
            le, ge = leq(a, b), leq(b, a)
            if le and ge:
                return "="
            if le:
                return "<"
            if ge:
                return ">"
            return "||"
        if isinstance(a, GameForm) and is_number(a):
            a = cnf_from_form(a)
        if isinstance(b, GameForm) and is_number(b):
            b = cnf_from_form(b)
        if isinstance(a, CnfSurreal) and isinstance(b, CnfSurreal):
            return cnf_cmp(a, b).symbol
        raise LayerMismatch("cmp: несравнимые слои")

    def _fn_sqrt(self, *args: Expr) -> Any:
        self._arity("sqrt", args, 1, 2)
        x = self._arg(args[0])
        if not isinstance(x, GameForm):
            raise LayerMismatch("sqrt определен на слое форм")
        steps = self._steps_arg(args, closure.SQRT)
        self._note(f"sqrt(steps={steps})")
        return closure.sqrt(x, steps)

    def _fn_inv(self, *args: Expr) -> Any:
        self._arity("inv", args, 1, 2)
        x = self._arg(args[0])
        if isinstance(x, CnfSurreal):
            return mono_inverse(x)
        if not isinstance(x, GameForm):
            raise LayerMismatch(f"inv недоступно: {describe_layer(x)}")
        steps = self._steps_arg(args, closure.INVERSE)
        self._note(f"inv(steps={steps})")
        return closure.inverse(x, steps)


def evaluate_text(text: str, config: Optional[Config] = None) -> EvalResult:
    return Evaluator(config).evaluate(parse(text))


__all__ = [
    "MAX_POWER",
    "layer_of",
    "describe_layer",
    "Evaluator",
    "evaluate_text",
]
