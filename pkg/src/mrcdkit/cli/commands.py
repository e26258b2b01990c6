"""
Command implementations. Each takes the parsed arguments and returns the
process exit code; failures propagate as MrcdkitException.
"""
import argparse
import math
import time
from pathlib import Path
from typing import Optional

from mrcdkit.cli.parser import TargetArgument
from mrcdkit.cli.schemas import FitReport, OgkReport, RegressionReport
from mrcdkit.core.exceptions import InvalidSubsetSizeError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import (
    AlyzOptions,
    FactorModelParams,
    MrcdOptions,
    OgkOptions,
    OutputOptions,
)
from mrcdkit.domain.services import mrcd
from mrcdkit.domain.services.ogk_estimator import ogk_fit
from mrcdkit.domain.services.regression import regress_on_column
from mrcdkit.domain.services.simulation import run_experiment
from mrcdkit.infrastructure.io import (
    load_sim_configs,
    read_data_matrix,
    read_target_matrix,
    render_sim_table,
    sidecar_paths,
    write_json_report,
    write_matrix_csv,
    write_scan_csv,
    write_sim_csv,
)

logger = get_logger("commands", parent_folder="cli")


def _mrcd_options(args: argparse.Namespace) -> MrcdOptions:
    return MrcdOptions.from_config(rho=getattr(args, "rho", None), n_jobs=args.n_jobs)


def _ogk_options(args: argparse.Namespace) -> OgkOptions:
    return OgkOptions.from_config(n_jobs=args.n_jobs)


def _target(choice: TargetArgument):
    if isinstance(choice, Path):
        return read_target_matrix(choice)
    return choice


def _subset_size(args: argparse.Namespace, n: int) -> Optional[int]:
    if args.h is not None:
        return args.h
    if args.h_frac is not None:
        return min(n, math.ceil(args.h_frac * n - 1e-9))
    return None


def _sidecars(out: Optional[Path], p: int) -> bool:
    return out is not None and p > OutputOptions.from_config().sidecar_threshold


def cmd_fit(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    data = read_data_matrix(args.input, index_col=args.index_col)
    options = _mrcd_options(args)
    result = mrcd.fit(
        data,
        h=_subset_size(args, data.n),
        target=_target(args.target),
        options=options,
        ogk_options=_ogk_options(args),
    )

    method = args.cutoff if args.cutoff is not None else (args.cutoff_method or options.cutoff_method)
    cutoff = mrcd.outlier_cutoff(result.distances, result.p, method, options.cutoff_quantile)
    flagged = mrcd.flag_outliers(result.distances, cutoff)

    sidecar = _sidecars(args.out, result.p)
    extra = {}
    if sidecar:
        scatter_path, precision_path = sidecar_paths(args.out)
        write_matrix_csv(result.scatter, scatter_path, data.columns)
        write_matrix_csv(result.precision, precision_path, data.columns)
        extra = {"scatter_file": scatter_path.name, "precision_file": precision_path.name}

    report = FitReport.from_fit(
        result,
        data,
        input=str(args.input),
        cutoff=cutoff,
        cutoff_method="fixed" if args.cutoff is not None else getattr(method, "value", str(method)),
        flagged=flagged,
        inline_matrices=not sidecar,
        seed=args.seed,
        timing_seconds=time.perf_counter() - started,
        **extra,
    )
    write_json_report(report, args.out)
    logger.info("Fit command finished", extra={"h": result.h, "rho": result.rho, "flagged": len(flagged)})
    return 0


def cmd_scan_h(args: argparse.Namespace) -> int:
    data = read_data_matrix(args.input, index_col=args.index_col)
    h_min = args.h_min if args.h_min is not None else math.ceil(data.n / 2)
    h_max = args.h_max if args.h_max is not None else data.n
    if h_min > h_max:
        raise InvalidSubsetSizeError(h=h_min, n=data.n, message=f"--h-min {h_min} exceeds --h-max {h_max}")

    rows = mrcd.scan_h(
        data,
        range(h_min, h_max + 1),
        target=_target(args.target),
        options=_mrcd_options(args),
        ogk_options=_ogk_options(args),
    )
    write_scan_csv(rows, args.out)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    configs = load_sim_configs(args.sim_config, factor_defaults=FactorModelParams.from_config())
    overrides = {key: value for key, value in (("seed", args.seed), ("n_jobs", args.n_jobs)) if value is not None}
    if overrides:
        configs = [cfg.model_copy(update=overrides) for cfg in configs]

    options = MrcdOptions.from_config()
    ogk_options = OgkOptions.from_config()
    alyz_options = AlyzOptions.from_config()
    results = [run_experiment(cfg, options, ogk_options, alyz_options) for cfg in configs]

    write_sim_csv(results, args.out)
    if args.out is not None:
        print(render_sim_table(results))
    return 0


def cmd_regress(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    data = read_data_matrix(args.input, index_col=args.index_col)
    result = regress_on_column(
        data,
        args.response,
        h=_subset_size(args, data.n),
        target=_target(args.target),
        options=_mrcd_options(args),
        ogk_options=_ogk_options(args),
    )
    report = RegressionReport.from_fit(
        result,
        data,
        input=str(args.input),
        seed=args.seed,
        timing_seconds=time.perf_counter() - started,
    )
    write_json_report(report, args.out)
    return 0


def cmd_ogk(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    data = read_data_matrix(args.input, index_col=args.index_col)
    result = ogk_fit(data, _ogk_options(args))

    sidecar = _sidecars(args.out, data.p)
    extra = {}
    if sidecar:
        scatter_path, _ = sidecar_paths(args.out)
        write_matrix_csv(result.scatter, scatter_path, data.columns)
        extra = {"scatter_file": scatter_path.name}

    report = OgkReport.from_fit(
        result,
        data,
        input=str(args.input),
        inline_matrices=not sidecar,
        seed=args.seed,
        timing_seconds=time.perf_counter() - started,
        **extra,
    )
    write_json_report(report, args.out)
    return 0


COMMANDS = {
    "fit": cmd_fit,
    "scan-h": cmd_scan_h,
    "simulate": cmd_simulate,
    "regress": cmd_regress,
    "ogk": cmd_ogk,
}
