import numpy as np
import pytest
from scipy import stats

from mrcdkit.core.exceptions import DataFormatError, DimensionMismatchError, EmptySampleError
from mrcdkit.domain.services.robust_univariate import (
    QN_CONSISTENCY_CONSTANT,
    kendall_tau,
    kendall_tau_matrix,
    median,
    qn_correction,
    qn_rank,
    qn_scale,
    qn_scale_columns,
)


def test_median_odd_and_even():
    assert median([3.0, 1.0, 2.0]) == 2.0
    assert median([4.0, 1.0, 3.0, 2.0]) == 2.5

def test_median_empty_sample():
    with pytest.raises(EmptySampleError) as exc:
        median([])
    assert exc.value.error_details["actual"] == 0

def test_qn_rank():
    assert qn_rank(5) == 3
    assert qn_rank(10) == 15

def test_qn_correction_large_n():
    assert qn_correction(11) == pytest.approx(11 / 12.4)
    assert qn_correction(12) == pytest.approx(12 / 15.8)

def test_qn_five_points():
    """Third smallest pairwise difference of 1..5 is 1."""
    assert qn_scale([1, 2, 3, 4, 5]) == pytest.approx(QN_CONSISTENCY_CONSTANT * 0.844)

def test_qn_mostly_tied_sample_is_zero():
    assert qn_scale([1.0, 1.0, 1.0, 2.0]) == 0.0

def test_qn_equivariance(rng):
    x = rng.standard_normal(37)
    assert qn_scale(-3.0 * x + 7.0) == pytest.approx(3.0 * qn_scale(x))

def test_qn_normal_consistency(rng):
    x = rng.standard_normal(2000)
    assert qn_scale(x) == pytest.approx(1.0, rel=0.08)

def test_qn_rejects_single_value():
    with pytest.raises(EmptySampleError):
        qn_scale([1.0])

def test_qn_rejects_non_finite():
    with pytest.raises(DataFormatError):
        qn_scale([1.0, np.nan, 2.0])

def test_qn_columns_matches_scalar(rng):
    """The sorted-lag column routine agrees with the direct pairwise version."""
    X = rng.standard_normal((41, 6)) * np.array([1, 2, 3, 4, 5, 6])
    expected = [qn_scale(X[:, j]) for j in range(6)]
    np.testing.assert_allclose(qn_scale_columns(X), expected, rtol=1e-12)

def test_qn_columns_needs_matrix():
    with pytest.raises(DimensionMismatchError):
        qn_scale_columns(np.arange(5.0))

def test_kendall_small_example():
    result = kendall_tau([1, 2, 3], [1, 3, 2])
    assert result.tau == pytest.approx(1 / 3)
    assert not result.degenerate

def test_kendall_constant_input_is_degenerate():
    result = kendall_tau([1, 1, 1], [1, 2, 3])
    assert result.tau == 0.0
    assert result.degenerate

def test_kendall_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        kendall_tau([1, 2, 3], [1, 2])

def test_kendall_matches_scipy_with_ties(rng):
    x = rng.integers(0, 5, size=60).astype(float)
    y = x + rng.integers(0, 3, size=60)
    expected = stats.kendalltau(x, y, variant="b").statistic
    assert kendall_tau(x, y).tau == pytest.approx(expected)

def test_kendall_matrix_matches_pairwise(rng):
    X = rng.standard_normal((30, 4))
    X[:, 1] += X[:, 0]
    X[:, 3] = np.round(X[:, 3])
    tau = kendall_tau_matrix(X)

    np.testing.assert_allclose(tau, tau.T)
    np.testing.assert_allclose(np.diag(tau), 1.0)
    for j in range(4):
        for k in range(j + 1, 4):
            assert tau[j, k] == pytest.approx(kendall_tau(X[:, j], X[:, k]).tau)

def test_kendall_matrix_constant_column(rng):
    X = rng.standard_normal((20, 3))
    X[:, 2] = 4.0
    tau = kendall_tau_matrix(X)
    assert tau[2, 2] == 1.0
    assert np.all(tau[2, :2] == 0.0)

def _pairwise_qn(x):
    n = len(x)
    differences = sorted(abs(x[i] - x[j]) for i in range(n) for j in range(i + 1, n))
    half = n // 2 + 1
    k = half * (half - 1) // 2
    correction = {2: 0.399, 3: 0.994, 4: 0.512, 5: 0.844, 6: 0.611, 7: 0.857, 8: 0.669, 9: 0.872}.get(
        n, n / (n + 1.4) if n % 2 else n / (n + 3.8)
    )
    return 2.2219 * correction * differences[k - 1]

def _pairwise_tau_b(x, y):
    n = len(x)
    score = 0.0
    untied_x = 0
    untied_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = np.sign(x[j] - x[i])
            dy = np.sign(y[j] - y[i])
            score += dx * dy
            untied_x += dx != 0
            untied_y += dy != 0
    if untied_x == 0 or untied_y == 0:
        return 0.0
    return score / np.sqrt(untied_x * untied_y)

def test_qn_matches_pairwise_definition(rng):
    for _ in range(100):
        n = int(rng.integers(2, 51))
        x = rng.standard_normal(n) * rng.uniform(0.1, 10.0)
        if rng.random() < 0.3:
            x = np.round(x)
        expected = _pairwise_qn(list(x))
        assert qn_scale(x) == pytest.approx(expected, rel=1e-12, abs=1e-12)
        assert qn_scale_columns(x[:, None])[0] == pytest.approx(expected, rel=1e-12, abs=1e-12)

def test_kendall_matches_pairwise_definition(rng):
    """Rounded samples carry ties in one or both inputs."""
    for trial in range(100):
        n = int(rng.integers(10, 51))
        x = rng.standard_normal(n)
        y = 0.6 * x + rng.standard_normal(n)
        if trial % 3 == 1:
            x = np.round(2 * x)
        elif trial % 3 == 2:
            x, y = np.round(2 * x), np.round(y)
        expected = _pairwise_tau_b(x, y)
        assert kendall_tau(x, y).tau == pytest.approx(expected, rel=1e-12, abs=1e-12)
        assert kendall_tau_matrix(np.column_stack([x, y]))[0, 1] == pytest.approx(expected, rel=1e-12, abs=1e-12)
