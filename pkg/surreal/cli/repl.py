from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, List, Optional, TextIO, Tuple

from ..core.config import Config
from ..core.errors import SurrealError, brief_exception
from ..core.logs import SessionLog
from ..core.results import EvalResult, render_result
from .evaluator import Evaluator
from .expr import parse_statement


PROMPT = "surreal> "
QUIT_COMMANDS = ("exit", "quit", ":q", ":quit")
# ValueError из ядра: шаги и глубина вне пределов
RECOVERABLE = (SurrealError, ValueError)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


class Session:
    """
    Одна сессия: вычислитель с переменными, журнал и формат вывода.
    """

    def __init__(self, config: Config, log: Optional[SessionLog] = None) -> None:
        self.config = config
        self.evaluator = Evaluator(config)
        self.log = log or SessionLog("session", enabled=False)

    def execute(self, line: str) -> Optional[str]:
        """
        Одна строка → текст ответа (None для пустых строк и комментариев).
        Ошибки пробрасываются после записи в журнал.
        """
        text = _strip_comment(line)
        if not text:
            return None
        self.log.log_in(text)
        try:
            name, result = self.evaluator.execute(parse_statement(text))
        except RECOVERABLE as e:
            self.log.log_err(brief_exception(e))
            raise
        out = self.render(name, result)
        self.log.log_out(out)
        return out

    def render(self, name: Optional[str], result: EvalResult) -> str:
        body = render_result(result, self.config.output_format)
        if name is not None and "\n" not in body:
            return f"{name} = {body}"
        return body


def repl(
    session: Session,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    prompt: bool = True,
) -> int:
    """
    Читает строки до EOF или команды выхода. Ошибки печатаются и не
    прерывают сессию; код возврата 2, если ошибки были.
    """
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    had_error = False
    while True:
        if prompt:
            stdout.write(PROMPT)
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        if line.strip() in QUIT_COMMANDS:
            break
        try:
            out = session.execute(line)
        except RECOVERABLE as e:
            had_error = True
            stdout.write(f"error: {brief_exception(e)}\n")
            continue
        if out is not None:
            stdout.write(out + "\n")
    return 2 if had_error else 0


def run_lines(session: Session, lines: List[str], emit: Callable[[str], None]) -> Tuple[int, Optional[int]]:
    """
    Пакетный режим: останавливается на первой ошибке.
    Возвращает (код, номер строки с ошибкой или None).
    """
    for lineno, line in enumerate(lines, 1):
        try:
            out = session.execute(line)
        except RECOVERABLE as e:
            emit(f"error: line {lineno}: {brief_exception(e)}")
            return 2, lineno
        if out is not None:
            emit(out)
    return 0, None


def run_script(session: Session, path: Path, emit: Callable[[str], None] = print) -> int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        emit(f"error: {e}")
        return 2
    code, _line = run_lines(session, text.splitlines(), emit)
    return code


__all__ = [
    "PROMPT",
    "Session",
    "repl",
    "run_lines",
    "run_script",
]
