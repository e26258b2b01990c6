import os
from pathlib import Path
from typing import Any, Callable, Optional

from dotenv import load_dotenv

from mrcdkit.core.exceptions import EnvironmentTypeConversionError
from mrcdkit.core.mrcd_logger import get_logger

_TRUE = frozenset({"1", "true", "yes", "on"})
_FALSE = frozenset({"0", "false", "no", "off"})


class EnvironmentHandler:
    """
    Process environment, optionally seeded from ``src/.env``.

    The file is optional for a command-line tool; without it only the
    process environment is read. Exported shell variables always win.
    """

    DEFAULT_APP_ENV = "dev"

    _env_path: Optional[Path] = None
    _initialized = False
    _logger = get_logger("environment", parent_folder="core")

    @classmethod
    def load(cls, env_path: Optional[Path] = None) -> None:
        if cls._initialized:
            return
        cls._env_path = env_path or Path(__file__).resolve().parents[3] / ".env"
        found = cls._env_path.exists()
        if found:
            load_dotenv(cls._env_path, override=False)
        cls._logger.debug("Environment ready", extra={"env_file_path": str(cls._env_path), "env_file_found": found})
        cls._initialized = True

    @classmethod
    def is_initialized(cls) -> bool:
        return cls._initialized

    @classmethod
    def _typed(cls, key: str, target_type: str, convert: Callable[[str], Any], default: Any) -> Any:
        if not cls._initialized:
            cls.load()
        raw = os.getenv(key)
        if raw is None or not raw.strip():
            return default
        try:
            return convert(raw.strip())
        except ValueError as e:
            cls._logger.error("Environment value has the wrong type", extra={"key": key, "target_type": target_type})
            raise EnvironmentTypeConversionError(key=key, target_type=target_type, cause=e) from e

    @classmethod
    def get_value_as_str(cls, key: str, default: Optional[str] = None) -> Optional[str]:
        return cls._typed(key, "string", str, default)

    @classmethod
    def get_value_as_int(cls, key: str, default: Optional[int] = None) -> Optional[int]:
        return cls._typed(key, "integer", int, default)

    @classmethod
    def get_value_as_bool(cls, key: str, default: Optional[bool] = None) -> Optional[bool]:
        return cls._typed(key, "boolean", _parse_bool, default)

    @classmethod
    def get_path(cls, key: str) -> Optional[Path]:
        return cls._typed(key, "path", lambda raw: Path(raw).expanduser(), None)

    @classmethod
    def get_app_env(cls) -> str:
        return cls.get_value_as_str("APP_ENV", cls.DEFAULT_APP_ENV).lower()


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"not a boolean: {raw!r}")
