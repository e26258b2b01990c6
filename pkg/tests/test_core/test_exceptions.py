import pytest

from mrcdkit.core.exceptions import (
    MrcdkitException,
    DataFileNotFoundError,
    DataFormatError,
    DegenerateVariableError,
    InvalidSubsetSizeError,
    InvalidOptionError,
    SimulationConfigError,
    FactorModelError,
    SingularScatterError,
    TargetValidationError,
)
from mrcdkit.core.exceptions.error_levels import ErrorDetailLevel, get_error_level_from_env


@pytest.mark.parametrize("exception, exit_code", [
    (DataFileNotFoundError(file_path="x.csv"), 2),
    (DataFormatError(columns=["a"], reason="non-numeric"), 2),
    (DegenerateVariableError(column="a", column_index=0), 3),
    (InvalidSubsetSizeError(h=3, n=10), 4),
    (SimulationConfigError(offending_keys=["A.n"]), 5),
    (FactorModelError(parameter="factor_cov", reason="not symmetric"), 5),
    (InvalidOptionError(option="rho", value=2.0), 5),
    (SingularScatterError(rho=0.0), 1),
    (TargetValidationError(reason="not symmetric"), 1),
])
def test_exit_codes(exception, exit_code):
    assert isinstance(exception, MrcdkitException)
    assert exception.exit_code == exit_code

def test_degenerate_variable_names_column():
    error = DegenerateVariableError(column="octane", column_index=4)
    assert "octane" in error.error_message
    assert error.error_details["column"] == "octane"

def test_simulation_config_lists_keys():
    error = SimulationConfigError(offending_keys=["A.n", "A.foo"], problems=["bad"], file_path="sim.ini")
    assert "A.n" in error.error_message and "A.foo" in error.error_message
    assert error.error_details["offending_keys"] == ["A.n", "A.foo"]

def test_cause_is_recorded():
    cause = ValueError("boom")
    error = DataFormatError(reason="broken", cause=cause)
    assert error.error_details["cause"] == "boom"
    assert error.error_details["cause_type"] == "ValueError"

def test_to_dict_levels():
    error = InvalidSubsetSizeError(h=3, n=10)
    minimal = error.to_dict(**ErrorDetailLevel.MINIMAL.to_flags())
    standard = error.to_dict(**ErrorDetailLevel.STANDARD.to_flags())

    assert set(minimal) == {"exit_code", "error_code", "error_message"}
    assert standard["error_details"] == {"h": 3, "n": 10}
    assert "traceback" not in standard

@pytest.mark.parametrize("app_env, level", [
    ("dev", ErrorDetailLevel.FULL),
    ("test", ErrorDetailLevel.STANDARD),
    ("prod", ErrorDetailLevel.MINIMAL),
    ("", ErrorDetailLevel.MINIMAL),
])
def test_error_level_from_env(app_env, level):
    assert get_error_level_from_env(app_env) is level
