import numpy as np
from scipy import linalg

from mrcdkit.core.exceptions import InvalidOptionError
from mrcdkit.domain.models import DataMatrix


def n_outliers(n: int, epsilon: float) -> int:
    """floor(epsilon * n), robust to products such as 0.1 * 400 = 39.999..."""
    return int(np.floor(epsilon * n + 1e-9))


def contaminate(
    X: DataMatrix,
    sigma: np.ndarray,
    epsilon: float,
    k: float,
    rng: np.random.Generator,
) -> DataMatrix:
    """
    Replace floor(epsilon n) random rows by mu + k v.

    mu is the mean of the clean sample and v the unit eigenvector of sigma
    with the smallest eigenvalue, so every outlier sits at distance k from
    the centre of the good data.
    """
    if not 0 <= epsilon < 0.5:
        raise InvalidOptionError(option="epsilon", value=epsilon, reason="must lie in [0, 0.5)")
    count = n_outliers(X.n, epsilon)
    if count == 0:
        return X

    _, vectors = linalg.eigh(sigma)
    direction = vectors[:, 0]
    center = X.values.mean(axis=0)
    rows = rng.choice(X.n, size=count, replace=False)

    values = X.values.copy()
    values[rows] = center + k * direction
    return X.with_values(values)
