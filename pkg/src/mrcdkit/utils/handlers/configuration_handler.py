from configparser import ConfigParser
from pathlib import Path
from typing import Any, Callable, List, Optional

from mrcdkit.core.exceptions import (
    ConfigurationDirectoryNotFoundError,
    ConfigurationFileNotFoundError,
    ConfigurationInvalidAppEnvError,
    ConfigurationNotInitializedError,
    ConfigurationTestFailedError,
    ConfigurationTypeConversionError,
)
from mrcdkit.core.mrcd_logger import get_logger

from .environment_handler import EnvironmentHandler

SENTINEL_SECTION = "Test"
SENTINEL_KEY = "value"
SENTINEL_VALUE = "ThisKeyIsForConfigTest"


class ConfigurationHandler:
    """
    Estimator defaults read from ``configurations/<APP_ENV>.ini``.

    APP_ENV picks the file by substring (``dev``, ``test`` or ``prod``);
    ``--config`` replaces it with an explicit path. Every accepted file
    carries the [Test] sentinel so a stray INI is rejected up front.
    """

    _initialized = False
    _parser = ConfigParser()
    _config_dir: Optional[Path] = None
    _config_file: Optional[Path] = None
    _current_env: Optional[str] = None
    _logger = get_logger("configuration", parent_folder="core")

    VALID_ENVIRONMENTS = ("dev", "prod", "test")

    @classmethod
    def load(cls, config_file: Optional[Path] = None) -> None:
        if cls._initialized:
            return
        if not EnvironmentHandler.is_initialized():
            EnvironmentHandler.load()

        if config_file is not None:
            ini_file, cls._current_env = Path(config_file), "custom"
        else:
            ini_file = cls._env_file()
        if not ini_file.is_file():
            cls._logger.error("Configuration file not found", extra={"config_file": str(ini_file)})
            raise ConfigurationFileNotFoundError(file_path=str(ini_file))

        cls._parser.read(ini_file, encoding="utf-8")
        cls._config_file = ini_file
        cls._initialized = True
        cls._logger.debug("Configuration file loaded", extra={"config_file": str(ini_file), "app_env": cls._current_env})

    @classmethod
    def _env_file(cls) -> Path:
        cls._config_dir = Path(__file__).resolve().parents[3] / "configurations"
        if not cls._config_dir.is_dir():
            raise ConfigurationDirectoryNotFoundError(directory_path=str(cls._config_dir))

        app_env = EnvironmentHandler.get_app_env()
        cls._current_env = next((env for env in cls.VALID_ENVIRONMENTS if env in app_env), None)
        if cls._current_env is None:
            cls._logger.error("APP_ENV matches no configuration file", extra={"app_env": app_env})
            raise ConfigurationInvalidAppEnvError(app_env=app_env, valid_environments=list(cls.VALID_ENVIRONMENTS))
        return cls._config_dir / f"{cls._current_env}.ini"

    @classmethod
    def init(cls, config_file: Optional[Path] = None) -> bool:
        """Load the file and check its sentinel; the command line calls this once."""
        if cls._initialized:
            return True
        cls.load(config_file)

        actual = cls._parser.get(SENTINEL_SECTION, SENTINEL_KEY, fallback=None)
        if actual != SENTINEL_VALUE:
            cls._initialized = False
            cls._logger.error("Configuration sentinel mismatch", extra={"config_file": str(cls._config_file), "actual_value": actual})
            raise ConfigurationTestFailedError(
                test_section=SENTINEL_SECTION,
                test_key=SENTINEL_KEY,
                expected_value=SENTINEL_VALUE,
                actual_value=actual,
            )
        cls._logger.info("Configuration ready", extra={"app_env": cls._current_env, "config_file": str(cls._config_file)})
        return True

    @classmethod
    def ensure_loaded(cls) -> None:
        if not cls._initialized:
            cls.load()

    @classmethod
    def is_initialized(cls) -> bool:
        return cls._initialized

    @classmethod
    def get_current_env(cls) -> Optional[str]:
        return cls._current_env

    @classmethod
    def has_section(cls, section: str) -> bool:
        cls._require_loaded()
        return cls._parser.has_section(section)

    @classmethod
    def _require_loaded(cls) -> None:
        if not cls._initialized:
            raise ConfigurationNotInitializedError()

    @classmethod
    def _read(cls, section: str, key: str, target_type: str, convert: Callable[[str], Any], fallback: Any) -> Any:
        cls._require_loaded()
        raw = cls._parser.get(section, key, fallback=None)
        if raw is None or not raw.strip():
            return fallback
        try:
            return convert(raw.strip())
        except ValueError as e:
            cls._logger.error(
                "Configuration value has the wrong type",
                extra={"section": section, "key": key, "target_type": target_type, "value": raw},
            )
            raise ConfigurationTypeConversionError(section=section, key=key, target_type=target_type, cause=e) from e

    @classmethod
    def get_value_as_str(cls, section: str, key: str, fallback: Optional[str] = None) -> Optional[str]:
        return cls._read(section, key, "string", str, fallback)

    @classmethod
    def get_value_as_int(cls, section: str, key: str, fallback: Optional[int] = None) -> Optional[int]:
        return cls._read(section, key, "integer", int, fallback)

    @classmethod
    def get_value_as_float(cls, section: str, key: str, fallback: Optional[float] = None) -> Optional[float]:
        return cls._read(section, key, "float", float, fallback)

    @classmethod
    def get_value_as_bool(cls, section: str, key: str, fallback: Optional[bool] = None) -> Optional[bool]:
        return cls._read(section, key, "boolean", _parse_bool, fallback)

    @classmethod
    def get_value_as_list(cls, section: str, key: str, separator: str = ",", fallback: Optional[list] = None) -> list:
        items = cls._read(section, key, "list", lambda raw: [item.strip() for item in raw.split(separator) if item.strip()], None)
        return items if items is not None else list(fallback or [])

    @classmethod
    def get_value_as_float_list(cls, section: str, key: str, fallback: Optional[List[float]] = None) -> List[float]:
        parse = lambda raw: [float(item) for item in raw.split(",") if item.strip()]  # noqa: E731
        values = cls._read(section, key, "float list", parse, None)
        return values if values is not None else list(fallback or [])


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered not in ConfigParser.BOOLEAN_STATES:
        raise ValueError(f"not a boolean: {raw!r}")
    return ConfigParser.BOOLEAN_STATES[lowered]
