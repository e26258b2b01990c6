import numpy as np
import pytest

from mrcdkit.core.exceptions import EmptySampleError
from mrcdkit.domain.models import DataMatrix, OgkOptions
from mrcdkit.domain.services.ogk_estimator import (
    biweight_rho,
    biweight_weights,
    location_scale_columns,
    m_scale_pair,
    ogk_fit,
)


def test_biweight_rho_bounded():
    u = np.array([0.0, 0.5, 1.5476, 10.0])
    values = biweight_rho(u, 1.5476)
    assert values[0] == 0.0
    assert values[2] == pytest.approx(1.0)
    assert values[3] == 1.0

def test_biweight_weights_vanish_outside():
    np.testing.assert_allclose(biweight_weights(np.array([0.0, 5.0, -5.0]), 4.685), [1.0, 0.0, 0.0])

def test_symmetric_sample_location():
    m, _ = m_scale_pair()
    assert m([-2.0, -1.0, 0.0, 1.0, 2.0]) == pytest.approx(0.0, abs=1e-15)

def test_scale_equivariance(rng):
    _, s = m_scale_pair()
    x = rng.standard_normal(50)
    assert s(-4.0 * x) == pytest.approx(4.0 * s(x), rel=1e-12)
    assert s(x + 100.0) == pytest.approx(s(x), rel=1e-10)

def test_scale_normal_consistency(rng):
    _, s = m_scale_pair()
    assert s(rng.standard_normal(5000)) == pytest.approx(1.0, rel=0.05)

def test_scale_of_constant_is_zero():
    _, s = m_scale_pair()
    assert s([3.0, 3.0, 3.0, 3.0]) == 0.0

def test_location_ignores_outliers(rng):
    x = rng.standard_normal(200)
    x[:20] = 50.0
    location, _ = location_scale_columns(x)
    assert abs(location[0]) < 0.3

def test_location_scale_needs_two_rows():
    with pytest.raises(EmptySampleError):
        location_scale_columns(np.array([[1.0, 2.0]]))

def test_independent_columns_give_diagonal_scatter(rng):
    X = rng.standard_normal((2000, 4)) * np.array([1.0, 2.0, 0.5, 3.0])
    result = ogk_fit(X)
    off_diagonal = result.scatter / np.sqrt(np.outer(np.diag(result.scatter), np.diag(result.scatter)))
    np.fill_diagonal(off_diagonal, 0.0)
    assert np.abs(off_diagonal).max() < 0.1
    np.testing.assert_allclose(np.sqrt(np.diag(result.scatter)), [1.0, 2.0, 0.5, 3.0], rtol=0.1)

def test_diagonal_equivariance(gaussian_data):
    a = np.array([3.0, 0.2, 1.0, 7.0])
    b = np.array([-5.0, 2.0, 0.0, 40.0])
    base = ogk_fit(gaussian_data)
    moved = ogk_fit(gaussian_data * a + b)
    np.testing.assert_allclose(moved.scatter, base.scatter * np.outer(a, a), rtol=1e-8, atol=1e-12)
    np.testing.assert_allclose(moved.location, base.location * a + b, rtol=1e-8)

def test_scatter_is_symmetric_psd(gaussian_data):
    result = ogk_fit(DataMatrix.from_array(gaussian_data))
    np.testing.assert_allclose(result.scatter, result.scatter.T)
    assert result.min_eigenvalue > 0

def test_zero_variance_column_is_repaired(rng):
    X = rng.standard_normal((50, 3))
    X[:, 2] = 1.0
    result = ogk_fit(X)
    assert result.min_eigenvalue > 0
    assert np.all(np.isfinite(result.scatter))

def test_batched_parallel_pairs_match(gaussian_data):
    serial = ogk_fit(gaussian_data)
    batched = ogk_fit(gaussian_data, OgkOptions(pair_batch_size=2, n_jobs=3))
    np.testing.assert_allclose(serial.scatter, batched.scatter, rtol=1e-12, atol=1e-15)

def test_ogk_needs_two_rows():
    with pytest.raises(EmptySampleError):
        ogk_fit(np.ones((1, 3)))
