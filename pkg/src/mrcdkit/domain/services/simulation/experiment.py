"""
Monte Carlo experiment engine.

Each replication r draws from its own stream default_rng([seed, r]):
truth, clean sample, contamination, then every configured estimator at
every subset size. Replications may run on a thread pool; records are
collected by replication index so the aggregates do not depend on
scheduling.
"""
import dataclasses
from typing import List, Optional, Tuple

import numpy as np

from mrcdkit import __version__
from mrcdkit.core.exceptions import MrcdkitException
from mrcdkit.core.mrcd_logger import get_current_context, get_logger, run_context
from mrcdkit.domain.models import (
    AlyzOptions,
    DataGeneratingProcess,
    DataMatrix,
    EstimatorKind,
    FactorModelParams,
    MrcdOptions,
    OgkOptions,
    ReplicationRecord,
    SimCell,
    SimConfig,
    SimResult,
)
from mrcdkit.domain.services.mrcd import fit, prepare
from mrcdkit.domain.services.ogk_estimator import ogk_fit
from mrcdkit.domain.services.simulation.contamination import contaminate, n_outliers
from mrcdkit.domain.services.simulation.generators import alyz_correlation, factor_model_sample, gaussian_sample
from mrcdkit.domain.services.simulation.metrics import squared_error
from mrcdkit.utils.parallel import ordered_map

logger = get_logger("experiment", parent_folder="simulation")

FIT_ERRORS = (MrcdkitException, np.linalg.LinAlgError, ValueError)


def replication_rng(seed: int, replication: int) -> np.random.Generator:
    return np.random.default_rng([seed, replication])


def generate_replication(
    cfg: SimConfig,
    rng: np.random.Generator,
    alyz_options: Optional[AlyzOptions] = None,
) -> Tuple[DataMatrix, np.ndarray]:
    """Contaminated sample and true scatter for one replication."""
    if cfg.dgp == DataGeneratingProcess.ALYZ:
        alyz_options = dataclasses.replace(alyz_options or AlyzOptions(), condition=cfg.condition)
        sigma = alyz_correlation(cfg.p, rng, alyz_options)
        clean = gaussian_sample(sigma, cfg.n, rng)
    else:
        clean, sigma = factor_model_sample(cfg.n, cfg.p, cfg.factor or FactorModelParams(), rng)
    return contaminate(clean, sigma, cfg.epsilon, cfg.k, rng), sigma


def _mrcd_records(
    cfg: SimConfig,
    replication: int,
    X: DataMatrix,
    sigma: np.ndarray,
    options: MrcdOptions,
    ogk_options: OgkOptions,
) -> List[ReplicationRecord]:
    kinds = [kind for kind in cfg.estimators if kind in (EstimatorKind.MRCD, EstimatorKind.MCD)]
    if not kinds:
        return []

    try:
        prepared = prepare(X, cfg.target, options, ogk_options)
    except FIT_ERRORS as e:
        logger.warning("Replication preparation failed", extra={"replication": replication, "error": str(e)})
        return [
            ReplicationRecord(replication, kind, fraction, cfg.h_for(fraction), None, None, error=str(e))
            for kind in kinds
            for fraction in cfg.h_fractions
        ]

    records = []
    for kind in kinds:
        kind_options = dataclasses.replace(options, rho=0.0) if kind == EstimatorKind.MCD else options
        for fraction in cfg.h_fractions:
            h = cfg.h_for(fraction)
            try:
                result = fit(prepared.X, h=h, options=kind_options, prepared=prepared)
                records.append(ReplicationRecord(
                    replication, kind, fraction, h, squared_error(result.scatter, sigma), result.rho,
                ))
            except FIT_ERRORS as e:
                logger.warning(
                    "Replication fit failed",
                    extra={"replication": replication, "estimator": kind.value, "h": h, "error": str(e)},
                )
                records.append(ReplicationRecord(replication, kind, fraction, h, None, None, error=str(e)))
    return records


def run_replication(
    cfg: SimConfig,
    replication: int,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
    alyz_options: Optional[AlyzOptions] = None,
) -> List[ReplicationRecord]:
    options = options or MrcdOptions()
    ogk_options = ogk_options or OgkOptions()
    rng = replication_rng(cfg.seed, replication)
    X, sigma = generate_replication(cfg, rng, alyz_options)

    records = _mrcd_records(cfg, replication, X, sigma, options, ogk_options)
    if EstimatorKind.OGK in cfg.estimators:
        try:
            estimate = ogk_fit(X, ogk_options)
            records.append(ReplicationRecord(
                replication, EstimatorKind.OGK, None, None, squared_error(estimate.scatter, sigma), None,
            ))
        except FIT_ERRORS as e:
            logger.warning("Replication OGK fit failed", extra={"replication": replication, "error": str(e)})
            records.append(ReplicationRecord(replication, EstimatorKind.OGK, None, None, None, None, error=str(e)))
    return records


def _aggregate(cfg: SimConfig, records: List[ReplicationRecord]) -> Tuple[SimCell, ...]:
    cells = []
    for kind in cfg.estimators:
        fractions = [None] if kind == EstimatorKind.OGK else cfg.h_fractions
        for fraction in fractions:
            group = [r for r in records if r.estimator == kind and r.h_fraction == fraction]
            ok = [r for r in group if r.ok]
            rhos = [r.rho for r in ok if r.rho is not None]
            cells.append(SimCell(
                panel=cfg.panel,
                estimator=kind,
                h_fraction=fraction,
                h=None if fraction is None else cfg.h_for(fraction),
                mse=float(np.mean([r.squared_error for r in ok])) if ok else None,
                avg_rho=float(np.mean(rhos)) if rhos else None,
                replications=len(ok),
                failures=len(group) - len(ok),
            ))
    return tuple(cells)


def run_experiment(
    cfg: SimConfig,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
    alyz_options: Optional[AlyzOptions] = None,
) -> SimResult:
    """Run all replications of one panel and aggregate MSE and average rho per cell."""
    options = options or MrcdOptions()
    ogk_options = ogk_options or OgkOptions()
    if cfg.n_jobs > 1:
        options = dataclasses.replace(options, n_jobs=1)
        ogk_options = dataclasses.replace(ogk_options, n_jobs=1)

    outliers = n_outliers(cfg.n, cfg.epsilon)
    for fraction in cfg.h_fractions:
        if outliers > cfg.n - cfg.h_for(fraction):
            logger.warning(
                "More outliers than trimmed observations",
                extra={"panel": cfg.panel, "outliers": outliers, "h": cfg.h_for(fraction), "n": cfg.n},
            )

    parent = get_current_context()

    def replicate(replication: int) -> List[ReplicationRecord]:
        with run_context(command="simulate", seed=cfg.seed, replication=replication, parent=parent):
            return run_replication(cfg, replication, options, ogk_options, alyz_options)

    batches = ordered_map(replicate, range(cfg.replications), n_jobs=cfg.n_jobs)
    records = [record for batch in batches for record in batch]
    cells = _aggregate(cfg, records)

    logger.info(
        "Simulation panel completed",
        extra={
            "panel": cfg.panel,
            "replications": cfg.replications,
            "failures": sum(not r.ok for r in records),
        },
    )
    return SimResult(config=cfg, cells=cells, records=tuple(records), version=__version__)
