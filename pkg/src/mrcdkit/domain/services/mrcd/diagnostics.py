"""
Outlier cutoffs on robust distances.

    chisq      sqrt(chi2_p quantile)
    empirical  the chisq cutoff times sqrt(median(RD^2) / median(chi2_p)),
               which follows the bulk of the data when the chi-square
               approximation is poor (large p relative to n)
"""
from typing import Tuple, Union

import numpy as np
from scipy.stats import chi2

from mrcdkit.core.exceptions import InvalidOptionError
from mrcdkit.domain.models import CutoffMethod


def outlier_cutoff(
    distances,
    p: int,
    method: Union[CutoffMethod, str, float] = CutoffMethod.CHISQ,
    quantile: float = 0.975,
) -> float:
    """Distance threshold above which an observation is flagged; a number is used as is."""
    if isinstance(method, (int, float)) and not isinstance(method, bool):
        if not method > 0:
            raise InvalidOptionError(option="cutoff", value=method, reason="must be positive")
        return float(method)
    try:
        method = CutoffMethod(method)
    except ValueError as e:
        raise InvalidOptionError(option="cutoff_method", value=method, cause=e) from e

    cutoff = float(np.sqrt(chi2.ppf(quantile, p)))
    if method == CutoffMethod.EMPIRICAL:
        squared = np.asarray(distances, dtype=float) ** 2
        cutoff *= float(np.sqrt(np.median(squared) / chi2.median(p)))
    return cutoff


def flag_outliers(distances, cutoff: float) -> Tuple[int, ...]:
    """0-based indices of observations with distance strictly above ``cutoff``."""
    return tuple(int(i) for i in np.flatnonzero(np.asarray(distances) > cutoff))
