"""
Environment and configuration-file errors. All of them exit with status 5.
"""

from typing import Any, Dict, List, Optional

from .base import MrcdkitException


class ApplicationException(MrcdkitException):
    exit_code = 5


class EnvironmentTypeConversionError(ApplicationException):
    error_code = "ENVIRONMENT_TYPE_CONVERSION_ERROR"
    error_message = "Environment variable type conversion failed"

    def __init__(self, key: Optional[str] = None, target_type: Optional[str] = None, **kwargs: Any):
        super().__init__(key=key, target_type=target_type, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if "key" in details:
            return f"Environment variable '{details['key']}' is not a valid {details.get('target_type', 'value')}"
        return None


class ConfigurationError(ApplicationException):
    error_code = "CONFIGURATION_ERROR"
    error_message = "Configuration error"


class ConfigurationDirectoryNotFoundError(ConfigurationError):
    error_code = "CONFIGURATION_DIRECTORY_NOT_FOUND_ERROR"
    error_message = "Configuration directory not found"

    def __init__(self, directory_path: Optional[str] = None, **kwargs: Any):
        super().__init__(directory_path=directory_path, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return f"No configuration directory at {details['directory_path']}" if "directory_path" in details else None


class ConfigurationFileNotFoundError(ConfigurationError):
    error_code = "CONFIGURATION_FILE_NOT_FOUND_ERROR"
    error_message = "Configuration file not found"

    def __init__(self, file_path: Optional[str] = None, **kwargs: Any):
        super().__init__(file_path=file_path, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return f"No configuration file at {details['file_path']}" if "file_path" in details else None


class ConfigurationInvalidAppEnvError(ConfigurationError):
    """APP_ENV names no INI file in the configurations directory."""

    error_code = "CONFIGURATION_INVALID_APP_ENV_ERROR"
    error_message = "Invalid APP_ENV value"

    def __init__(self, app_env: Optional[str] = None, valid_environments: Optional[List[str]] = None, **kwargs: Any):
        super().__init__(app_env=app_env, valid_environments=valid_environments, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return f"APP_ENV={details.get('app_env')!r} is not one of {details.get('valid_environments', [])}"


class ConfigurationTestFailedError(ConfigurationError):
    """The [Test] sentinel of a configuration file is missing or wrong."""

    error_code = "CONFIGURATION_TEST_FAILED_ERROR"
    error_message = "Configuration sentinel check failed"

    def __init__(
        self,
        test_section: Optional[str] = None,
        test_key: Optional[str] = None,
        expected_value: Optional[str] = None,
        actual_value: Optional[str] = None,
        **kwargs: Any,
    ):
        super().__init__(
            test_section=test_section,
            test_key=test_key,
            expected_value=expected_value,
            actual_value=actual_value,
            **kwargs,
        )

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return (
            f"[{details.get('test_section')}] {details.get('test_key')} should be "
            f"{details.get('expected_value')!r}, found {details.get('actual_value')!r}"
        )


class ConfigurationNotInitializedError(ConfigurationError):
    error_code = "CONFIGURATION_NOT_INITIALIZED_ERROR"
    error_message = "ConfigurationHandler.init() or load() must run before values are read"


class ConfigurationTypeConversionError(ConfigurationError):
    error_code = "CONFIGURATION_TYPE_CONVERSION_ERROR"
    error_message = "Configuration value type conversion failed"

    def __init__(
        self,
        section: Optional[str] = None,
        key: Optional[str] = None,
        target_type: Optional[str] = None,
        **kwargs: Any,
    ):
        super().__init__(section=section, key=key, target_type=target_type, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if "key" not in details:
            return None
        return f"[{details.get('section')}] {details['key']} is not a valid {details.get('target_type', 'value')}"


class InvalidOptionError(ConfigurationError):
    """An estimator or output option outside its admissible range."""

    error_code = "INVALID_OPTION_ERROR"
    error_message = "Invalid option value"

    def __init__(self, option: Optional[str] = None, value: Any = None, reason: Optional[str] = None, **kwargs: Any):
        super().__init__(option=option, value=value, reason=reason, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if "option" not in details:
            return None
        message = f"Invalid value for {details['option']}: {details.get('value')!r}"
        return f"{message} ({details['reason']})" if "reason" in details else message
