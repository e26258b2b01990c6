"""
Argument parser for ``python -m mrcdkit``.

    fit       MRCD location/scatter, robust distances and outlier flags
    scan-h    objective and scatter change over a range of h
    simulate  Monte Carlo panels from a config file
    regress   robust regression of one column on the others
    ogk       OGK location/scatter
"""
import argparse
from pathlib import Path
from typing import Union

from mrcdkit import __version__
from mrcdkit.domain.models import CutoffMethod, TargetKind

TargetArgument = Union[TargetKind, Path]

_TARGET_ALIASES = {
    "identity": TargetKind.IDENTITY,
    "equicorr": TargetKind.EQUICORRELATION,
    "equicorrelation": TargetKind.EQUICORRELATION,
    "rank": TargetKind.RANK,
}


def parse_target(value: str) -> TargetArgument:
    """identity | equicorr | rank | file=<path to a header-free square CSV>"""
    if value.startswith("file="):
        path = value[len("file="):]
        if not path:
            raise argparse.ArgumentTypeError("file= needs a path")
        return Path(path)
    try:
        return _TARGET_ALIASES[value.strip().lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown target '{value}'; use identity, equicorr, rank or file=<path>"
        ) from None


def _fraction(value: str) -> float:
    fraction = float(value)
    if not 0.5 <= fraction <= 1.0:
        raise argparse.ArgumentTypeError("h fraction must lie in [0.5, 1]")
    return fraction


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI file replacing configurations/{APP_ENV}.ini")
    common.add_argument("--seed", type=int, help="recorded in every output; overrides simulation seeds")
    common.add_argument("--n-jobs", type=int, dest="n_jobs", help="worker threads")
    common.add_argument("--out", type=Path, help="output file (standard output when omitted)")
    common.add_argument("--verbose", action="store_true", help="log to the console and print full error details")
    return common


def _data_arguments(target_default: str = "identity") -> argparse.ArgumentParser:
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("input", type=Path, help="CSV with a header row, one observation per row")
    data.add_argument("--index-col", dest="index_col", help="column holding row labels instead of data")
    data.add_argument("--target", type=parse_target, default=parse_target(target_default),
                      help="identity | equicorr | rank | file=<csv>")
    data.add_argument("--rho", type=float, help="force the regularization weight (0 gives MCD)")
    return data


def _subset_size_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--h", type=int, help="subset size, n/2 <= h <= n")
    group.add_argument("--h-frac", type=_fraction, dest="h_frac", help="subset size as a fraction of n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrcdkit",
        description="Minimum regularized covariance determinant estimation",
    )
    parser.add_argument("--version", action="version", version=f"mrcdkit {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common_arguments()

    fit = commands.add_parser("fit", parents=[common, _data_arguments()], help="fit MRCD and flag outliers")
    _subset_size_arguments(fit)
    fit.add_argument("--cutoff", type=float, help="distance cutoff; overrides --cutoff-method")
    fit.add_argument("--cutoff-method", dest="cutoff_method", choices=[m.value for m in CutoffMethod])

    scan = commands.add_parser("scan-h", parents=[common, _data_arguments()], help="scan the subset size")
    scan.add_argument("--h-min", type=int, dest="h_min", help="default ceil(n/2)")
    scan.add_argument("--h-max", type=int, dest="h_max", help="default n")

    simulate = commands.add_parser("simulate", parents=[common], help="run simulation panels")
    simulate.add_argument("sim_config", type=Path, help="simulation config (INI, one section per panel)")

    regress = commands.add_parser("regress", parents=[common, _data_arguments()], help="robust regression")
    _subset_size_arguments(regress)
    regress.add_argument("--response", required=True, help="name of the response column")

    ogk = commands.add_parser("ogk", parents=[common], help="fit OGK")
    ogk.add_argument("input", type=Path, help="CSV with a header row, one observation per row")
    ogk.add_argument("--index-col", dest="index_col", help="column holding row labels instead of data")

    return parser
