from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .. import __version__
from ..core import closure
from ..core.config import Config, load_config, save_config, set_config_value
from ..core.days import enumerate_day, export_tree
from ..core.embed import s_D, s_On, s_R, s_Z
from ..core.errors import LayerMismatch, ParseError, SurrealError, brief_exception
from ..core.gameform import GameForm, form_to_text
from ..core.logs import open_session_log
from ..core.numeric import parse_dyadic, parse_scalar
from ..core.ordinal import parse_ordinal
from ..core.results import EvalResult, format_table, payload_to_text, render_result
from ..core.types import Layer, OutputFormat
from .evaluator import Evaluator, layer_of
from .expr import parse
from .repl import Session, repl, run_script

FORMATS = [f.value for f in OutputFormat]
EMBED_KINDS = ("int", "dyadic", "rat", "ord")


# -----------------------------
# Аргументы
# -----------------------------


def _add_budget_flags(p: argparse.ArgumentParser, default: Any) -> None:
    """
    Флаги бюджета. У подкоманд default=SUPPRESS, чтобы не затирать
    значения, заданные до имени подкоманды.
    """
    p.add_argument("--steps", type=int, default=default, help="Шаги итераций inv/sqrt")
    p.add_argument("--format", choices=FORMATS, default=default, help="Формат вывода")
    p.add_argument("--max-day", dest="max_day", type=int, default=default, help="Предел перебора дней")
    p.add_argument("--depth", type=int, default=default, help="Глубина разреза для рациональных")
    p.add_argument("--no-log", dest="no_log", action="store_true", default=default, help="Не писать журнал сессии")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="surreal",
        description="Surreal: точная арифметика сюрреальных чисел",
    )
    p.add_argument("--eval", dest="expr", metavar="EXPR", help="Вычислить выражение и выйти")
    _add_budget_flags(p, None)
    p.add_argument("--version", action="store_true", help="Показать версию и выйти")

    sub = p.add_subparsers(dest="cmd")
    common = argparse.ArgumentParser(add_help=False)
    _add_budget_flags(common, argparse.SUPPRESS)

    p_day = sub.add_parser("day", parents=[common], help="Перебор дня n")
    p_day.add_argument("n", type=int)

    p_tree = sub.add_parser("tree", parents=[common], help="Дерево канонических значений")
    p_tree.add_argument("depth_arg", metavar="D", type=int)

    p_embed = sub.add_parser("embed", parents=[common], help="Вложение числа")
    p_embed.add_argument("kind", choices=EMBED_KINDS)
    p_embed.add_argument("value")

    p_inv = sub.add_parser("inv", parents=[common], help="Итерации обратного элемента")
    p_inv.add_argument("expr_arg", metavar="EXPR")

    p_sqrt = sub.add_parser("sqrt", parents=[common], help="Итерации квадратного корня")
    p_sqrt.add_argument("expr_arg", metavar="EXPR")
    p_sqrt.add_argument("--seeds", help='Затравки "a,b|c,d"')

    sub.add_parser("repl", parents=[common], help="Интерактивная сессия")

    p_run = sub.add_parser("run", parents=[common], help="Выполнить файл (по оператору на строку)")
    p_run.add_argument("file")

    p_cfg = sub.add_parser("config", help="Настройки Surreal")
    sub_cfg = p_cfg.add_subparsers(dest="cfg_cmd")
    sub_cfg.add_parser("show", help="Показать текущую конфигурацию")
    p_set = sub_cfg.add_parser("set", help="Сохранить одно значение")
    p_set.add_argument("key")
    p_set.add_argument("value")

    return p


def _effective_config(ns: argparse.Namespace) -> Config:
    cfg = load_config(create_if_missing=True)
    return cfg.with_overrides(
        steps=getattr(ns, "steps", None),
        max_day=getattr(ns, "max_day", None),
        cut_depth=getattr(ns, "depth", None),
        output_format=getattr(ns, "format", None),
    )


def _fail(e: BaseException) -> int:
    print(f"error: {brief_exception(e)}", file=sys.stderr)
    return 2


def _budgets(cfg: Config) -> Dict[str, Any]:
    return {
        "steps": cfg.steps,
        "max_day": cfg.max_day,
        "cut_depth": cfg.cut_depth,
        "format": cfg.output_format.value,
    }


def _open_log(mode: str, cfg: Config, ns: argparse.Namespace):
    enabled = cfg.log_sessions and not getattr(ns, "no_log", False)
    return open_session_log(mode, _budgets(cfg), enabled=enabled, keep_logs=cfg.keep_logs)


# -----------------------------
# Сессии: --eval, repl, run
# -----------------------------


def cmd_eval(cfg: Config, ns: argparse.Namespace, text: str) -> int:
    with _open_log("eval", cfg, ns) as log:
        session = Session(cfg, log)
        try:
            out = session.execute(text)
        except SurrealError as e:
            return _fail(e)
        if out is not None:
            print(out)
    return 0


def cmd_repl(cfg: Config, ns: argparse.Namespace) -> int:
    with _open_log("repl", cfg, ns) as log:
        return repl(Session(cfg, log), prompt=sys.stdin.isatty())


def cmd_run(cfg: Config, ns: argparse.Namespace, path: str) -> int:
    with _open_log("run", cfg, ns) as log:
        return run_script(Session(cfg, log), Path(path))


# -----------------------------
# Дни и дерево
# -----------------------------


def cmd_day(cfg: Config, n: int) -> int:
    report = enumerate_day(n, max_day=cfg.max_day)
    fmt = cfg.output_format
    if fmt is OutputFormat.JSON:
        print(json.dumps(report.to_data(), ensure_ascii=False, separators=(",", ":")))
    elif fmt is OutputFormat.TABLE:
        print(format_table(report.to_rows()))
    else:
        print(payload_to_text(report))
    return 0


def cmd_tree(cfg: Config, depth: int) -> int:
    fmt = OutputFormat.JSON if cfg.output_format is OutputFormat.JSON else OutputFormat.DOT
    print(export_tree(depth, fmt))
    return 0


# -----------------------------
# Вложения
# -----------------------------


def _embed(kind: str, raw: str, cfg: Config) -> Tuple[Any, str]:
    if kind == "int":
        try:
            i = int(raw)
        except ValueError:
            raise ParseError(f"Ожидалось целое: {raw!r}", 1)
        return s_Z(i), "s_Z"
    if kind == "dyadic":
        return s_D(parse_dyadic(raw)), "s_D"
    if kind == "rat":
        return s_R(parse_scalar(raw), cfg.cut_depth), f"s_R(depth={cfg.cut_depth})"
    return s_On(parse_ordinal(raw)), "s_On"


def cmd_embed(cfg: Config, kind: str, raw: str) -> int:
    payload, note = _embed(kind, raw, cfg)
    if isinstance(payload, GameForm) and cfg.output_format is OutputFormat.TEXT:
        print(form_to_text(payload, compact=False))
        return 0
    print(render_result(EvalResult(layer_of(payload), payload, [note]), cfg.output_format))
    return 0


# -----------------------------
# Замыкания
# -----------------------------


def _operand(cfg: Config, text: str) -> GameForm:
    result = Evaluator(cfg).evaluate(parse(text))
    if not isinstance(result.payload, GameForm):
        raise LayerMismatch("операнд должен быть формой {L|R} или двоичным числом")
    return result.payload


def parse_seeds(text: str) -> Tuple[List[Any], List[Any]]:
    """
    "a,b|c,d" → ([a, b], [c, d]); любая сторона может быть пустой.
    """
    if "|" not in text:
        raise ParseError("Затравки задаются как \"a,b|c,d\"", 1)
    left, right = text.split("|", 1)

    def side(s: str) -> List[Any]:
        return [parse_scalar(p.strip()) for p in s.split(",") if p.strip()]

    return side(left), side(right)


def cmd_inv(cfg: Config, ns: argparse.Namespace) -> int:
    x = _operand(cfg, ns.expr_arg)
    steps = cfg.steps_for(closure.INVERSE)
    cut = closure.inv_iterate(x, steps)
    print(render_result(EvalResult(Layer.CUT, cut, [f"inv(steps={steps})"]), cfg.output_format))
    return 0


def cmd_sqrt(cfg: Config, ns: argparse.Namespace) -> int:
    x = _operand(cfg, ns.expr_arg)
    steps = cfg.steps_for(closure.SQRT)
    seeds = parse_seeds(ns.seeds) if ns.seeds else None
    cut = closure.sqrt_iterate(x, steps, seeds)
    print(render_result(EvalResult(Layer.CUT, cut, [f"sqrt(steps={steps})"]), cfg.output_format))
    return 0


# -----------------------------
# Конфигурация
# -----------------------------


def cmd_config_show() -> int:
    cfg = load_config(create_if_missing=True)
    print(json.dumps(cfg.to_dict(), ensure_ascii=False, indent=2))
    return 0


def cmd_config_set(key: str, raw: str) -> int:
    cfg = set_config_value(load_config(create_if_missing=True), key, raw)
    save_config(cfg)
    print(f"{key} = {cfg.to_dict()[key]}")
    return 0


# -----------------------------
# main
# -----------------------------


def _dispatch(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    if ns.cmd == "config":
        if ns.cfg_cmd == "show":
            return cmd_config_show()
        if ns.cfg_cmd == "set":
            return cmd_config_set(ns.key, ns.value)
        parser.error("Неизвестная команда: config " + str(ns.cfg_cmd))

    cfg = _effective_config(ns)

    if ns.expr is not None:
        return cmd_eval(cfg, ns, ns.expr)
    if ns.cmd == "day":
        return cmd_day(cfg, ns.n)
    if ns.cmd == "tree":
        return cmd_tree(cfg, ns.depth_arg)
    if ns.cmd == "embed":
        return cmd_embed(cfg, ns.kind, ns.value)
    if ns.cmd == "inv":
        return cmd_inv(cfg, ns)
    if ns.cmd == "sqrt":
        return cmd_sqrt(cfg, ns)
    if ns.cmd == "run":
        return cmd_run(cfg, ns, ns.file)
    return cmd_repl(cfg, ns)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)

    if ns.version:
        print(f"Surreal version {__version__}")
        return 0

    try:
        return _dispatch(parser, ns)
    except (SurrealError, ValueError) as e:
        # ValueError из ядра: шаги вне пределов, неподдерживаемый формат
        return _fail(e)
    except RecursionError:
        print("error: RecursionError: форма слишком глубока для вывода в этом формате", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
