"""
Simulation config files.

INI format. Every section except [DEFAULT] and [factor] is one panel; keys
in [DEFAULT] are shared by all panels. A panel's label is its section name
unless it sets ``panel`` itself. [factor] overrides the factor-model
parameters for every panel with ``dgp = factor``.

    [DEFAULT]
    replications = 50
    seed = 2024

    [A]
    dgp = alyz
    n = 400
    p = 200
    epsilon = 0
    k = 0
    h_fractions = 0.75
"""
import configparser
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from mrcdkit.core.exceptions import DataFileNotFoundError, SimulationConfigError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import FactorModelParams, SimConfig

logger = get_logger("sim_config_loader", parent_folder="io")

FACTOR_SECTION = "factor"


def _raise_from_validation(error: ValidationError, file_path: str, section: str) -> None:
    keys, problems = [], []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"]) or "<panel>"
        keys.append(f"{section}.{key}")
        problems.append(f"[{section}] {key}: {item['msg']}")
    raise SimulationConfigError(offending_keys=keys, problems=problems, file_path=file_path, cause=error) from error


def _own_items(parser: configparser.ConfigParser, section: str) -> dict:
    defaults = parser.defaults()
    return {key: parser[section][key] for key in parser[section] if key not in defaults}


def load_sim_configs(
    path: Union[str, Path],
    factor_defaults: Optional[FactorModelParams] = None,
) -> List[SimConfig]:
    """Parse every panel of a simulation config file, in file order."""
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFoundError(file_path=str(path))

    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as e:
        raise SimulationConfigError(problems=[str(e)], file_path=str(path), cause=e) from e

    factor = factor_defaults or FactorModelParams()
    if parser.has_section(FACTOR_SECTION):
        overrides = _own_items(parser, FACTOR_SECTION)
        try:
            factor = FactorModelParams.model_validate({**factor.model_dump(), **overrides})
        except ValidationError as e:
            _raise_from_validation(e, str(path), FACTOR_SECTION)

    panels = [section for section in parser.sections() if section != FACTOR_SECTION]
    if not panels:
        raise SimulationConfigError(problems=["no panel sections"], file_path=str(path))

    configs = []
    for section in panels:
        data = dict(parser.items(section))
        data.setdefault("panel", section)
        if "m" in data:
            # a panel's own setting beats an inherited one under the other name
            own = _own_items(parser, section)
            replications = data.pop("m")
            if "m" in own or "replications" not in own:
                data["replications"] = replications
        if data.get("dgp", "alyz").strip().lower() == "factor":
            data["factor"] = factor
        try:
            configs.append(SimConfig.model_validate(data))
        except ValidationError as e:
            _raise_from_validation(e, str(path), section)

    logger.info("Simulation config loaded", extra={"file_path": str(path), "panels": [c.panel for c in configs]})
    return configs
