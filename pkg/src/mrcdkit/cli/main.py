"""
Process entry: handler start-up, run context, error reporting.

Errors are printed to standard error as JSON, with as much detail as
APP_ENV allows (``--verbose`` always shows everything), and their
``exit_code`` becomes the process exit status.
"""
import json
import sys
from typing import Optional, Sequence

from mrcdkit.cli.commands import COMMANDS
from mrcdkit.cli.parser import build_parser
from mrcdkit.core.exceptions import MrcdkitException
from mrcdkit.core.exceptions.error_levels import ErrorDetailLevel, get_error_level_from_env
from mrcdkit.core.mrcd_logger import enable_console_logging, get_logger, run_context
from mrcdkit.utils.handlers import ConfigurationHandler, EnvironmentHandler

logger = get_logger("main", parent_folder="cli")


def _error_level(verbose: bool) -> ErrorDetailLevel:
    if verbose:
        return ErrorDetailLevel.FULL
    try:
        return get_error_level_from_env(EnvironmentHandler.get_app_env())
    except MrcdkitException:
        return ErrorDetailLevel.MINIMAL


def report_error(exception: MrcdkitException, level: ErrorDetailLevel) -> None:
    payload = {"success": False, "error": exception.to_dict(**level.to_flags())}
    print(json.dumps(payload, indent=2, default=str), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = _error_level(args.verbose)
    if args.verbose:
        enable_console_logging()

    try:
        EnvironmentHandler.load()
        ConfigurationHandler.init(config_file=args.config)
        with run_context(command=args.command, seed=args.seed):
            return COMMANDS[args.command](args)
    except MrcdkitException as e:
        logger.error(
            "Command failed",
            extra={"command": args.command, "error_code": e.error_code, "exit_code": e.exit_code},
        )
        report_error(e, level)
        return e.exit_code
    except KeyboardInterrupt:
        logger.warning("Command interrupted", extra={"command": args.command})
        return 130
    except Exception as e:
        logger.error("Unexpected failure", extra={"command": args.command}, exc_info=True)
        report_error(MrcdkitException(cause=e), level)
        return 1
