from __future__ import annotations

import io
import re
import time
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from .config import ensure_app_dirs, logs_dir
from .errors import SurrealError, brief_exception, format_exception


# Сколько журналов сессий хранить (последние N)
MAX_SESSION_LOGS = 50


def _sanitize_id(s: str) -> str:
    """
    Безопасное имя файла: только a-z0-9_-.
    """
    s = s.strip().lower().replace(" ", "_")
    s = re.sub(r"[^a-z0-9._-]+", "_", s)
    return s or "session"


def sessions_dir() -> Path:
    ensure_app_dirs()
    d = logs_dir() / "sessions"
    d.mkdir(parents=True, exist_ok=True)
    return d


def _now() -> datetime:
    return datetime.now()


def _ts_filename(dt: datetime) -> str:
    # 2025-03-04_12-30-05
    return dt.strftime("%Y-%m-%d_%H-%M-%S")


def _fmt_human_ts(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%d %H:%M:%S")


def _fmt_elapsed(seconds: float) -> str:
    # hh:mm:ss.mmm
    ms = int((seconds - int(seconds)) * 1000)
    s = int(seconds) % 60
    m = (int(seconds) // 60) % 60
    h = int(seconds) // 3600
    if h:
        return f"{h:02d}:{m:02d}:{s:02d}.{ms:03d}"
    return f"{m:02d}:{s:02d}.{ms:03d}"


def _shorten(text: str, limit: int = 400) -> str:
    text = text.replace("\r\n", " ").replace("\n", " ")
    if len(text) > limit:
        return text[: limit - 3] + "..."
    return text


def rotate_logs(keep_latest: int = MAX_SESSION_LOGS) -> int:
    """
    Хранит только N последних журналов, удаляя старые.
    Возвращает количество удаленных файлов.
    """
    d = sessions_dir()
    files = [p for p in d.glob("*.log") if p.is_file()]
    files.sort(key=lambda p: (p.stat().st_mtime, p.name), reverse=True)
    removed = 0
    for p in files[keep_latest:]:
        try:
            p.unlink(missing_ok=True)
            removed += 1
        except Exception:
            pass
    return removed


def new_session_id() -> str:
    return uuid.uuid4().hex[:12]


class SessionLog:
    """
    Журнал одной сессии вычислений (REPL, скрипт, --eval).
    Использование:
      log = open_session_log("repl", budgets)
      log.log_in("1 + {0|1}")
      log.log_out("3/2")
      ...
      log.finalize()
      log.close()

    При enabled=False все методы: no-op.
    """

    def __init__(
        self,
        mode: str,
        session_id: Optional[str] = None,
        enabled: bool = True,
        keep_logs: int = MAX_SESSION_LOGS,
        start_dt: Optional[datetime] = None,
    ) -> None:
        self.mode = mode
        self.session_id = session_id or new_session_id()
        self.enabled = enabled
        self.keep_logs = keep_logs
        self.start_dt = start_dt or _now()
        self._t0 = time.monotonic()
        self._fh: Optional[io.TextIOWrapper] = None
        self.path: Optional[Path] = None
        self._closed = False
        self.statements = 0
        self.errors = 0

    def _ensure_open(self) -> bool:
        if not self.enabled or self._closed:
            return False
        if self._fh:
            return True
        fname = f"{_ts_filename(self.start_dt)}__{_sanitize_id(self.session_id)}.log"
        self.path = sessions_dir() / fname
        self._fh = self.path.open("w", encoding="utf-8", newline="\n")
        return True

    def _writeln(self, line: str = "") -> None:
        if not self._ensure_open():
            return
        assert self._fh is not None
        self._fh.write(line + "\n")
        self._fh.flush()

    def _stamp(self, tag: str, line: str) -> None:
        t = datetime.now().strftime("%H:%M:%S.%f")[:-3]
        self._writeln(f"{t} [{tag}] {_shorten(line)}")

    def write_header(self, budgets: Dict[str, Any]) -> None:
        self._writeln("=== Surreal Session Log ===")
        self._writeln(f"Start:   {_fmt_human_ts(self.start_dt)}")
        self._writeln(f"Mode:    {self.mode}")
        self._writeln(f"Session: {self.session_id}")
        if budgets:
            self._writeln("Budgets:")
            for k in sorted(budgets):
                self._writeln(f"  - {k}: {budgets[k]}")
        self._writeln("-" * 40)

    def log_in(self, line: str) -> None:
        self.statements += 1
        self._stamp("IN", line)

    def log_out(self, line: str) -> None:
        self._stamp("OUT", line)

    def log_err(self, line: str) -> None:
        self.errors += 1
        self._stamp("ERR", line)

    def finalize(self, error_brief: Optional[str] = None) -> None:
        """
        Итог сессии и ротация журналов.
        """
        if not self.enabled or self._closed:
            return
        status = "ERROR" if (self.errors or error_brief) else "OK"
        self._writeln("-" * 40)
        self._writeln(f"Finish:  {_fmt_human_ts(_now())}")
        self._writeln(f"Elapsed: {_fmt_elapsed(time.monotonic() - self._t0)}")
        self._writeln(f"Status:  {status}")
        self._writeln(f"Statements: {self.statements}, errors: {self.errors}")
        if error_brief:
            self._writeln(f"Error:   {error_brief}")
        self._writeln("=" * 28)
        rotate_logs(keep_latest=self.keep_logs)

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        try:
            if self._fh:
                self._fh.flush()
                self._fh.close()
        finally:
            self._fh = None

    def __enter__(self) -> "SessionLog":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if exc is not None:
            if not isinstance(exc, SurrealError):
                self._writeln(format_exception(exc))
            self.finalize(error_brief=brief_exception(exc))
        else:
            self.finalize()
        self.close()


def open_session_log(
    mode: str,
    budgets: Dict[str, Any],
    enabled: bool = True,
    keep_logs: int = MAX_SESSION_LOGS,
) -> SessionLog:
    """
    Создает SessionLog и пишет шапку.
    """
    log = SessionLog(mode, enabled=enabled, keep_logs=keep_logs)
    log.write_header(budgets)
    return log


__all__ = [
    "MAX_SESSION_LOGS",
    "sessions_dir",
    "rotate_logs",
    "new_session_id",
    "SessionLog",
    "open_session_log",
]
