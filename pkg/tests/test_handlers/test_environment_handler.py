import os
from pathlib import Path
from unittest.mock import patch

import pytest

from mrcdkit.core.exceptions import EnvironmentTypeConversionError
from mrcdkit.utils.handlers.environment_handler import EnvironmentHandler


def test_missing_env_file_is_fine():
    """A command-line run needs no .env file."""
    with patch("pathlib.Path.exists", return_value=False), \
         patch("mrcdkit.utils.handlers.environment_handler.load_dotenv") as load_dotenv:
        EnvironmentHandler.load()
    assert EnvironmentHandler.is_initialized() is True
    load_dotenv.assert_not_called()

def test_env_file_read_once(tmp_path):
    env_file = tmp_path / ".env"
    env_file.write_text("APP_ENV=test\n")
    with patch("mrcdkit.utils.handlers.environment_handler.load_dotenv") as load_dotenv:
        EnvironmentHandler.load(env_path=env_file)
        EnvironmentHandler.load(env_path=env_file)
    load_dotenv.assert_called_once_with(env_file, override=False)

def test_shell_beats_env_file(tmp_path, monkeypatch):
    env_file = tmp_path / ".env"
    env_file.write_text("MRCDKIT_SHARED=from_file\nMRCDKIT_FILE_ONLY=file_only\n")
    monkeypatch.setenv("MRCDKIT_SHARED", "from_shell")
    monkeypatch.delenv("MRCDKIT_FILE_ONLY", raising=False)
    try:
        EnvironmentHandler.load(env_path=env_file)
        assert EnvironmentHandler.get_value_as_str("MRCDKIT_SHARED") == "from_shell"
        assert EnvironmentHandler.get_value_as_str("MRCDKIT_FILE_ONLY") == "file_only"
    finally:
        os.environ.pop("MRCDKIT_FILE_ONLY", None)

def test_typed_values(monkeypatch):
    EnvironmentHandler._initialized = True
    monkeypatch.setenv("MRCDKIT_NAME", "  octane  ")
    monkeypatch.setenv("MRCDKIT_WORKERS", "4")
    monkeypatch.setenv("MRCDKIT_BLANK", "  ")
    monkeypatch.setenv("MRCDKIT_LOGS", "~/mrcdkit-logs")

    assert EnvironmentHandler.get_value_as_str("MRCDKIT_NAME") == "octane"
    assert EnvironmentHandler.get_value_as_int("MRCDKIT_WORKERS") == 4
    assert EnvironmentHandler.get_value_as_int("MRCDKIT_BLANK", default=1) == 1
    assert EnvironmentHandler.get_value_as_str("MRCDKIT_UNSET_KEY", default="def") == "def"
    assert EnvironmentHandler.get_path("MRCDKIT_LOGS") == Path("~/mrcdkit-logs").expanduser()
    assert EnvironmentHandler.get_path("MRCDKIT_UNSET_KEY") is None

@pytest.mark.parametrize("raw, expected", [("true", True), ("On", True), ("1", True), ("0", False), ("no", False)])
def test_boolean_spellings(monkeypatch, raw, expected):
    EnvironmentHandler._initialized = True
    monkeypatch.setenv("MRCDKIT_FLAG", raw)
    assert EnvironmentHandler.get_value_as_bool("MRCDKIT_FLAG") is expected

@pytest.mark.parametrize("getter, raw, target_type", [
    ("get_value_as_int", "four", "integer"),
    ("get_value_as_bool", "maybe", "boolean"),
])
def test_bad_values_raise(monkeypatch, getter, raw, target_type):
    EnvironmentHandler._initialized = True
    monkeypatch.setenv("MRCDKIT_BAD", raw)
    with pytest.raises(EnvironmentTypeConversionError) as exc:
        getattr(EnvironmentHandler, getter)("MRCDKIT_BAD")
    assert exc.value.error_details["key"] == "MRCDKIT_BAD"
    assert exc.value.error_details["target_type"] == target_type
    assert exc.value.exit_code == 5

def test_app_env_defaults_to_dev(monkeypatch):
    EnvironmentHandler._initialized = True
    monkeypatch.delenv("APP_ENV", raising=False)
    assert EnvironmentHandler.get_app_env() == "dev"
    monkeypatch.setenv("APP_ENV", "PROD")
    assert EnvironmentHandler.get_app_env() == "prod"
