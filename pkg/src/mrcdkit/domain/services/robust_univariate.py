"""
Robust univariate and pairwise statistics.

Qn scale
--------
    Qn = d * c_n * {|x_i - x_j| : i < j}_(k),   k = C(floor(n/2) + 1, 2)

with the asymptotic normal-consistency constant d = 2.2219 and the
finite-sample correction c_n below. The order statistic is taken over all
pairwise differences (O(n^2) memory); all targeted uses keep n in the low
thousands.

    n    : 2      3      4      5      6      7      8      9
    c_n  : 0.399  0.994  0.512  0.844  0.611  0.857  0.669  0.872

    n > 9: c_n = n / (n + 1.4) for odd n, n / (n + 3.8) for even n.

Kendall tau
-----------
tau-b: sum over pairs of sign(dx) * sign(dy), divided by
sqrt(untied_x * untied_y).
"""
from typing import NamedTuple

import numpy as np
from scipy import stats

from mrcdkit.core.exceptions import DataFormatError, DimensionMismatchError, EmptySampleError


QN_CONSISTENCY_CONSTANT = 2.2219
QN_SMALL_SAMPLE_CORRECTION = {
    2: 0.399,
    3: 0.994,
    4: 0.512,
    5: 0.844,
    6: 0.611,
    7: 0.857,
    8: 0.669,
    9: 0.872,
}

# Upper bound on pairwise-difference entries materialized per block
_MAX_BLOCK_ENTRIES = 8_000_000


class KendallTau(NamedTuple):
    tau: float
    degenerate: bool


def _as_sample(x, statistic: str, minimum: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size < minimum:
        raise EmptySampleError(required=minimum, actual=x.size, statistic=statistic)
    if not np.all(np.isfinite(x)):
        raise DataFormatError(reason=f"non-finite values passed to {statistic}")
    return x


def median(x) -> float:
    """Sample median; the midpoint of the central pair for even n."""
    return float(np.median(_as_sample(x, "median", 1)))


def qn_correction(n: int) -> float:
    if n in QN_SMALL_SAMPLE_CORRECTION:
        return QN_SMALL_SAMPLE_CORRECTION[n]
    return n / (n + 1.4) if n % 2 == 1 else n / (n + 3.8)


def qn_rank(n: int) -> int:
    """1-based rank k of the pairwise-difference order statistic."""
    half = n // 2 + 1
    return half * (half - 1) // 2


def qn_scale(x) -> float:
    """
    Qn scale estimate of a sample.

    Returns 0 when more than half of the values coincide; the caller decides
    whether that is an error.
    """
    x = _as_sample(x, "qn_scale", 2)
    n = x.size
    i, j = np.triu_indices(n, k=1)
    differences = np.abs(x[i] - x[j])
    k = qn_rank(n)
    return float(QN_CONSISTENCY_CONSTANT * qn_correction(n) * np.partition(differences, k - 1)[k - 1])


def qn_scale_columns(matrix) -> np.ndarray:
    """
    Qn of every column of an n×q matrix.

    Columns are sorted once; the pairwise differences of a sorted column are
    the lagged differences x_(i+d) - x_(i), which are filled block-wise so
    that no index arrays are needed.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise DimensionMismatchError(expected="2-D array", actual=f"{matrix.ndim}-D array", what="qn_scale_columns input")
    n, q = matrix.shape
    if n < 2:
        raise EmptySampleError(required=2, actual=n, statistic="qn_scale")
    if not np.all(np.isfinite(matrix)):
        raise DataFormatError(reason="non-finite values passed to qn_scale")

    n_pairs = n * (n - 1) // 2
    k = qn_rank(n)
    factor = QN_CONSISTENCY_CONSTANT * qn_correction(n)
    block = max(1, _MAX_BLOCK_ENTRIES // n_pairs)
    scales = np.empty(q)

    for start in range(0, q, block):
        stop = min(q, start + block)
        ordered = np.sort(matrix[:, start:stop], axis=0)
        differences = np.empty((n_pairs, stop - start))
        offset = 0
        for lag in range(1, n):
            count = n - lag
            differences[offset:offset + count] = ordered[lag:] - ordered[:-lag]
            offset += count
        scales[start:stop] = factor * np.partition(differences, k - 1, axis=0)[k - 1]
    return scales


def kendall_tau(x, y) -> KendallTau:
    """tau-b of two samples; a constant input yields tau = 0 flagged as degenerate."""
    x = _as_sample(x, "kendall_tau", 2)
    y = _as_sample(y, "kendall_tau", 2)
    if x.size != y.size:
        raise DimensionMismatchError(expected=x.size, actual=y.size, what="kendall_tau sample length")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return KendallTau(0.0, True)
    result = stats.kendalltau(x, y, variant="b")
    return KendallTau(float(result.statistic), False)


def kendall_tau_matrix(matrix) -> np.ndarray:
    """
    p×p tau-b matrix of the columns of an n×p matrix.

    Uses the sign-product form G = S'S over all row pairs, accumulated in
    blocks of row pairs; tau_jk = G_jk / sqrt(G_jj G_kk). Constant columns get
    zero off-diagonal entries.
    """
    matrix = np.asarray(matrix, dtype=float)
    n, p = matrix.shape
    if n < 2:
        raise EmptySampleError(required=2, actual=n, statistic="kendall_tau")

    first, second = np.triu_indices(n, k=1)
    block_size = max(1, _MAX_BLOCK_ENTRIES // (2 * p))
    gram = np.zeros((p, p))
    for start in range(0, first.size, block_size):
        rows_a = first[start:start + block_size]
        rows_b = second[start:start + block_size]
        signs = np.sign(matrix[rows_b] - matrix[rows_a])
        gram += signs.T @ signs

    untied = np.sqrt(np.diag(gram))
    denominator = np.outer(untied, untied)
    with np.errstate(invalid="ignore", divide="ignore"):
        tau = np.where(denominator > 0, gram / np.where(denominator > 0, denominator, 1.0), 0.0)
    np.fill_diagonal(tau, 1.0)
    return np.clip(tau, -1.0, 1.0)
