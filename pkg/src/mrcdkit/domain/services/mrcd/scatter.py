"""
Regularized subset scatter in the whitened space.

    K_core(H) = rho I + (1 - rho) c_alpha S_W(H)

Its eigenvalues are rho + (1 - rho) c_alpha lambda_j(S_W(H)), so the
objective and the calibration of rho only need the spectrum of S_W(H).
When h < p that spectrum comes from the h×h Gram matrix of the centered
subset rows, padded with p - h zeros.
"""
from typing import Tuple

import numpy as np
from scipy import linalg, optimize
from scipy.stats import chi2

from mrcdkit.core.exceptions import InvalidSubsetSizeError, SingularScatterError
from mrcdkit.domain.models import RegularizedScatter, SubsetIndex
from mrcdkit.domain.services.preprocess import subset_mean_cov


def validate_h(h: int, n: int) -> int:
    if not isinstance(h, (int, np.integer)) or isinstance(h, bool):
        raise InvalidSubsetSizeError(h=h, n=n, message=f"subset size must be an integer, got {h!r}")
    h = int(h)
    if h < 1 or 2 * h < n or h > n:
        raise InvalidSubsetSizeError(h=h, n=n)
    return h


def consistency_factor(h: int, n: int, p: int) -> float:
    """c_alpha = (h/n) / F_{chi2(p+2)}(q_{h/n}) with q the chi2(p) quantile at level h/n."""
    h = validate_h(h, n)
    if h == n:
        return 1.0
    level = h / n
    return float(level / chi2.cdf(chi2.ppf(level, p), p + 2))


def centered_subset(W: np.ndarray, subset: SubsetIndex) -> Tuple[np.ndarray, np.ndarray]:
    rows = W[subset.array]
    mean = rows.mean(axis=0)
    return mean, rows - mean


def subset_eigenvalues(W: np.ndarray, subset: SubsetIndex) -> np.ndarray:
    """Eigenvalues of S_W(H), ascending, clipped at zero."""
    _, centered = centered_subset(W, subset)
    h, p = centered.shape
    if h < p:
        gram = centered @ centered.T / h
        eigenvalues = np.concatenate([np.zeros(p - h), linalg.eigvalsh(gram)])
    else:
        eigenvalues = linalg.eigvalsh(centered.T @ centered / h)
    return np.sort(np.clip(eigenvalues, 0.0, None))


def core_eigenvalues(scatter_eigenvalues: np.ndarray, rho: float, c_alpha: float) -> np.ndarray:
    return rho + (1.0 - rho) * c_alpha * np.asarray(scatter_eigenvalues)


def regularized_scatter(subset: SubsetIndex, W: np.ndarray, rho: float, c_alpha: float) -> RegularizedScatter:
    _, scatter = subset_mean_cov(W[subset.array])
    core = rho * np.eye(W.shape[1]) + (1.0 - rho) * c_alpha * scatter
    return RegularizedScatter(
        rho=float(rho),
        c_alpha=float(c_alpha),
        scatter=scatter,
        core=core,
        eigenvalues=core_eigenvalues(subset_eigenvalues(W, subset), rho, c_alpha),
    )


def objective_from_eigenvalues(eigenvalues: np.ndarray, rho: float = 0.0) -> float:
    """det^{1/p} as the geometric mean of the eigenvalues, in the log domain."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    smallest = float(eigenvalues.min())
    if smallest <= 0:
        raise SingularScatterError(rho=rho, min_eigenvalue=smallest)
    return float(np.exp(np.mean(np.log(eigenvalues))))


def objective(K: RegularizedScatter) -> float:
    return objective_from_eigenvalues(K.eigenvalues, K.rho)


def _condition(rho: float, largest: float, smallest: float) -> float:
    low = rho + (1.0 - rho) * smallest
    return float("inf") if low <= 0 else (rho + (1.0 - rho) * largest) / low


def calibrate_rho(eigenvalues, kappa_max: float = 1000.0, fallback: float = 0.1) -> float:
    """
    Smallest rho in [0, 1) with cond(rho I + (1 - rho) diag(eigenvalues)) <= kappa_max.

    Closed form rho = (l_max - k l_min) / (l_max - k l_min + k - 1); the
    condition number is monotone in rho, so a root search on the same
    equation is the fallback when the closed form fails verification.
    """
    eigenvalues = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    largest = float(eigenvalues.max())
    smallest = float(eigenvalues.min())
    if largest <= 0:
        return float(fallback)
    if smallest > 0 and largest / smallest <= kappa_max:
        return 0.0

    excess = largest - kappa_max * smallest
    rho = excess / (excess + kappa_max - 1.0)
    rho = min(max(rho, 0.0), np.nextafter(1.0, 0.0))
    if _condition(rho, largest, smallest) <= kappa_max * (1 + 1e-9):
        return float(rho)

    def gap(r: float) -> float:
        return (r + (1.0 - r) * largest) - kappa_max * (r + (1.0 - r) * smallest)

    return float(optimize.brentq(gap, 0.0, 1.0, xtol=1e-15))
