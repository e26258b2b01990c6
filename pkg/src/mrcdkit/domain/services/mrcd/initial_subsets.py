"""
Six deterministic starting estimates for the subset search.

All six are computed on Z, the W columns centered at their medians and
divided by their Qn scales (zero scales left at 1):

    tanh         correlation of tanh(Z)
    spearman     Spearman rank correlation
    normal_scores  correlation of Phi^{-1}((rank - 1/3) / (n + 1/3))
    spatial_sign covariance of z_i / ||z_i||
    central_half covariance of the ceil(n/2) rows with smallest ||z_i||
    ogk          OGK scatter

Each raw matrix S is re-scaled along its own eigenvectors E by the robust
variances of the projections: S <- E diag(Qn(Z E_j)^2) E', with the
coordinatewise median (zero in Z) as location. The ceil(n/2) rows closest
to that estimate then give a classical mean and scatter, and the start's
distances are taken with respect to this half-set estimate. A scatter that
is singular or too ill-conditioned at either stage is blended to
rho_f I + (1 - rho_f) S.
"""
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import linalg, stats

from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import MrcdOptions, OgkOptions, SubsetIndex
from mrcdkit.domain.services.mrcd.concentration import smallest_h
from mrcdkit.domain.services.ogk_estimator import ogk_fit
from mrcdkit.domain.services.preprocess import subset_mean_cov
from mrcdkit.domain.services.robust_univariate import qn_scale_columns
from mrcdkit.utils.parallel import ordered_map

logger = get_logger("initial_subsets", parent_folder="services")

START_NAMES: Tuple[str, ...] = (
    "tanh",
    "spearman",
    "normal_scores",
    "spatial_sign",
    "central_half",
    "ogk",
)


@dataclass(frozen=True)
class InitialStart:
    """
    One start: its half-set location and scatter in Z coordinates and the
    squared distances of all rows to them. The distances do not depend on h,
    so one set serves every subset size.
    """

    index: int
    name: str
    location: np.ndarray
    scatter: np.ndarray
    eigenvalues: np.ndarray
    blended: bool
    distances: np.ndarray

    def subset(self, h: int) -> SubsetIndex:
        return smallest_h(self.distances, h)


def robust_standardize(W: np.ndarray) -> np.ndarray:
    center = np.median(W, axis=0)
    scale = qn_scale_columns(W)
    scale = np.where(scale > 0, scale, 1.0)
    return (W - center) / scale


def _correlation(matrix: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", divide="ignore"):
        correlation = np.atleast_2d(np.corrcoef(matrix, rowvar=False))
    correlation = np.nan_to_num(correlation, nan=0.0)
    np.fill_diagonal(correlation, 1.0)
    return correlation


def _tanh_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    return _correlation(np.tanh(Z))


def _spearman_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    return _correlation(stats.rankdata(Z, axis=0))


def _normal_scores_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    n = Z.shape[0]
    ranks = stats.rankdata(Z, axis=0)
    return _correlation(stats.norm.ppf((ranks - 1.0 / 3.0) / (n + 1.0 / 3.0)))


def _spatial_sign_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    norms = np.linalg.norm(Z, axis=1)
    signs = Z / np.where(norms > 0, norms, 1.0)[:, None]
    return signs.T @ signs / Z.shape[0]


def _central_half_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    n = Z.shape[0]
    norms = np.linalg.norm(Z, axis=1)
    half = int(np.ceil(n / 2))
    _, scatter = subset_mean_cov(Z[np.argsort(norms, kind="stable")[:half]])
    return scatter


def _ogk_start(Z: np.ndarray, ogk_options: OgkOptions) -> np.ndarray:
    return ogk_fit(Z, ogk_options).scatter


_CONSTRUCTORS: Dict[str, Callable[[np.ndarray, OgkOptions], np.ndarray]] = {
    "tanh": _tanh_start,
    "spearman": _spearman_start,
    "normal_scores": _normal_scores_start,
    "spatial_sign": _spatial_sign_start,
    "central_half": _central_half_start,
    "ogk": _ogk_start,
}


def _blend(eigenvalues: np.ndarray, options: MrcdOptions, name: str, stage: str) -> Tuple[np.ndarray, bool]:
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    largest = eigenvalues.max()
    smallest = eigenvalues.min()
    if smallest > 0 and largest / smallest <= options.max_condition:
        return eigenvalues, False
    logger.debug(
        "Initial start blended toward identity",
        extra={"start": name, "stage": stage, "rho_fallback": options.rho_fallback},
    )
    return options.rho_fallback + (1.0 - options.rho_fallback) * eigenvalues, True


def _spectral_distances(projections: np.ndarray, eigenvalues: np.ndarray) -> np.ndarray:
    return np.einsum("ij,j->i", projections ** 2, 1.0 / eigenvalues)


def _build_start(
    index: int,
    name: str,
    Z: np.ndarray,
    options: MrcdOptions,
    ogk_options: OgkOptions,
) -> InitialStart:
    raw = _CONSTRUCTORS[name](Z, ogk_options)
    _, E = linalg.eigh((raw + raw.T) / 2.0)
    projections = Z @ E
    eigenvalues, raw_blended = _blend(qn_scale_columns(projections) ** 2, options, name, "raw")
    raw_distances = _spectral_distances(projections, eigenvalues)

    half = int(np.ceil(Z.shape[0] / 2))
    closest = np.argsort(raw_distances, kind="stable")[:half]
    location, half_scatter = subset_mean_cov(Z[closest])
    half_eigenvalues, E = linalg.eigh(half_scatter)
    half_eigenvalues, half_blended = _blend(half_eigenvalues, options, name, "half")

    return InitialStart(
        index=index,
        name=name,
        location=location,
        scatter=(E * half_eigenvalues) @ E.T,
        eigenvalues=half_eigenvalues,
        blended=raw_blended or half_blended,
        distances=_spectral_distances((Z - location) @ E, half_eigenvalues),
    )


def compute_starts(
    W: np.ndarray,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
) -> Tuple[InitialStart, ...]:
    """The six starts for whitened data W, independent of h."""
    options = options or MrcdOptions()
    ogk_options = ogk_options or OgkOptions()
    Z = robust_standardize(np.asarray(W, dtype=float))

    starts = ordered_map(
        lambda item: _build_start(item[0], item[1], Z, options, ogk_options),
        list(enumerate(START_NAMES)),
        n_jobs=options.n_jobs,
    )
    logger.debug(
        "Initial starts computed",
        extra={"n": Z.shape[0], "p": Z.shape[1], "blended": [s.name for s in starts if s.blended]},
    )
    return tuple(starts)


def initial_subsets(
    W: np.ndarray,
    h: int,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
) -> Tuple[Tuple[SubsetIndex, ...], Tuple[np.ndarray, ...]]:
    """Six h-subsets H_0^i and the six start scatter matrices."""
    starts = compute_starts(W, options, ogk_options)
    return tuple(start.subset(h) for start in starts), tuple(start.scatter for start in starts)
