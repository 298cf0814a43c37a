from __future__ import annotations

import json
import os
import platform
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError
from .types import OutputFormat


try:
    import yaml  # type: ignore
except Exception:
    yaml = None  # YAML опционален для конфигурации


APP_NAME_WIN = "Surreal"
APP_NAME_UNIX = "surreal"

# Жесткие пределы перебора и итераций
MAX_DAY_CAP = 2
INV_STEPS_CAP = 64
SQRT_STEPS_CAP = 16
CUT_DEPTH_CAP = 64


@dataclass
class Config:
    """
    Бюджеты вычислений и настройки вывода.
    """

    version: int = 1

    # Шаги итераций inv/sqrt по умолчанию
    steps: int = 8

    # Полный перебор дней
    max_day: int = 2

    # Глубина разреза s_R для недвоичных рациональных
    cut_depth: int = 8

    inv_steps_cap: int = INV_STEPS_CAP
    sqrt_steps_cap: int = SQRT_STEPS_CAP

    output_format: OutputFormat = OutputFormat.TEXT

    # Журналы сессий
    log_sessions: bool = True
    keep_logs: int = 50

    # Внутренние поля (не сериализуемые):
    _loaded_from: Optional[Path] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d.pop("_loaded_from", None)
        for k, v in list(d.items()):
            if isinstance(v, Enum):
                d[k] = v.value
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Config":
        def clamp(key: str, default: int, lo: int, hi: int) -> int:
            try:
                v = int(d.get(key, default))
            except (TypeError, ValueError):
                raise ConfigError(f"{key}: ожидалось целое, получено {d.get(key)!r}")
            return max(lo, min(hi, v))

        cfg = Config()
        cfg.version = int(d.get("version", 1))
        cfg.inv_steps_cap = clamp("inv_steps_cap", INV_STEPS_CAP, 1, INV_STEPS_CAP)
        cfg.sqrt_steps_cap = clamp("sqrt_steps_cap", SQRT_STEPS_CAP, 1, SQRT_STEPS_CAP)
        cfg.steps = clamp("steps", 8, 0, max(cfg.inv_steps_cap, cfg.sqrt_steps_cap))
        cfg.max_day = clamp("max_day", 2, 0, MAX_DAY_CAP)
        cfg.cut_depth = clamp("cut_depth", 8, 0, CUT_DEPTH_CAP)
        fmt = str(d.get("output_format", OutputFormat.TEXT.value))
        cfg.output_format = (
            OutputFormat(fmt)
            if fmt in (e.value for e in OutputFormat)
            else OutputFormat.TEXT
        )
        cfg.log_sessions = _as_bool(d.get("log_sessions", True))
        cfg.keep_logs = clamp("keep_logs", 50, 0, 10_000)
        return cfg

    def with_overrides(self, **overrides: Any) -> "Config":
        """
        Копия с переопределениями (флаги CLI); None означает «не задано».
        """
        d = self.to_dict()
        for k, v in overrides.items():
            if v is not None:
                d[k] = v.value if isinstance(v, Enum) else v
        cfg = Config.from_dict(d)
        cfg._loaded_from = self._loaded_from
        return cfg

    def steps_for(self, kind: str) -> int:
        cap = self.inv_steps_cap if kind == "inverse" else self.sqrt_steps_cap
        return min(self.steps, cap)


def _as_bool(v: Any) -> bool:
    if isinstance(v, str):
        return v.strip().lower() in ("1", "true", "yes", "on")
    return bool(v)


def config_keys() -> Dict[str, type]:
    return {f.name: f.type for f in fields(Config) if not f.name.startswith("_")}  # type: ignore[misc]


# -----------------------------
# Пути и директории приложения
# -----------------------------


def is_windows() -> bool:
    return platform.system().lower().startswith("win")


def config_dir() -> Path:
    """
    Директория конфигурации.
    - Windows: %APPDATA%/Surreal
    - Linux: ~/.config/surreal
    """
    if is_windows():
        base = os.environ.get("APPDATA", str(Path.home() / "AppData" / "Roaming"))
        return Path(base) / APP_NAME_WIN
    else:
        return Path.home() / ".config" / APP_NAME_UNIX


def cache_dir() -> Path:
    """
    - Windows: %LOCALAPPDATA%/Surreal/cache
    - Linux: ~/.cache/surreal
    """
    if is_windows():
        base = os.environ.get("LOCALAPPDATA", str(Path.home() / "AppData" / "Local"))
        return Path(base) / APP_NAME_WIN / "cache"
    else:
        return Path.home() / ".cache" / APP_NAME_UNIX


def logs_dir() -> Path:
    return cache_dir() / "logs"


def ensure_app_dirs() -> None:
    for p in [config_dir(), cache_dir(), logs_dir()]:
        p.mkdir(parents=True, exist_ok=True)


def config_file_path() -> Path:
    """
    YAML, если доступен PyYAML; иначе JSON.
    """
    d = config_dir()
    if yaml is not None:
        return d / "config.yaml"
    return d / "config.json"


# -----------------------------
# Загрузка/сохранение конфигурации
# -----------------------------


def load_config(create_if_missing: bool = True) -> Config:
    """
    Загружает конфиг. Если файла нет: создает с настройками по умолчанию.
    """
    path = config_file_path()
    if not path.exists():
        cfg = Config()
        cfg._loaded_from = path
        if create_if_missing:
            save_config(cfg)
        return cfg

    try:
        with path.open("r", encoding="utf-8") as f:
            if path.suffix.lower() in (".yaml", ".yml"):
                d = yaml.safe_load(f) or {}
            else:
                d = json.load(f)
    except Exception as e:
        raise ConfigError(f"Ошибка чтения конфигурации {path}: {e}")

    if not isinstance(d, dict):
        raise ConfigError("Формат конфигурации должен быть объектом (mapping)")

    cfg = Config.from_dict(d)
    cfg._loaded_from = path
    return cfg


def save_config(cfg: Config) -> None:
    ensure_app_dirs()
    path = cfg._loaded_from or config_file_path()
    d = cfg.to_dict()
    try:
        with path.open("w", encoding="utf-8") as f:
            if path.suffix.lower() in (".yaml", ".yml") and yaml is not None:
                yaml.safe_dump(d, f, sort_keys=False, allow_unicode=True)
            else:
                json.dump(d, f, ensure_ascii=False, indent=2)
    except Exception as e:
        raise ConfigError(f"Не удалось сохранить конфигурацию {path}: {e}")


def set_config_value(cfg: Config, key: str, raw: str) -> Config:
    """
    `config set KEY VALUE`: значение проходит те же проверки, что и файл.
    """
    if key not in config_keys() or key == "version":
        raise ConfigError(f"Неизвестный ключ конфигурации: {key}")
    d = cfg.to_dict()
    d[key] = raw
    new = Config.from_dict(d)
    new._loaded_from = cfg._loaded_from
    return new


__all__ = [
    "MAX_DAY_CAP",
    "INV_STEPS_CAP",
    "SQRT_STEPS_CAP",
    "CUT_DEPTH_CAP",
    "Config",
    "config_keys",
    "is_windows",
    "config_dir",
    "cache_dir",
    "logs_dir",
    "ensure_app_dirs",
    "config_file_path",
    "load_config",
    "save_config",
    "set_config_value",
]
