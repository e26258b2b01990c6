import numpy as np
import pytest
from scipy import integrate, stats

from mrcdkit.core.exceptions import InvalidSubsetSizeError, SingularScatterError
from mrcdkit.domain.models import RegularizedScatter, SubsetIndex
from mrcdkit.domain.services.mrcd import calibrate_rho, consistency_factor, objective, regularized_scatter, validate_h
from mrcdkit.domain.services.mrcd.scatter import objective_from_eigenvalues, subset_eigenvalues


def _core(eigenvalues, rho=0.1):
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    return RegularizedScatter(
        rho=rho,
        c_alpha=1.0,
        scatter=np.diag(eigenvalues),
        core=np.diag(eigenvalues),
        eigenvalues=eigenvalues,
    )


@pytest.mark.parametrize("h, n", [(5, 10), (10, 10), (6, 11), (7, 12)])
def test_validate_h_accepts(h, n):
    assert validate_h(h, n) == h

@pytest.mark.parametrize("h, n", [(4, 10), (11, 10), (0, 1), (5, 11)])
def test_validate_h_rejects(h, n):
    with pytest.raises(InvalidSubsetSizeError) as exc:
        validate_h(h, n)
    assert exc.value.exit_code == 4
    assert exc.value.error_details["n"] == n

@pytest.mark.parametrize("h", [7.5, True, "7"])
def test_validate_h_rejects_non_integers(h):
    with pytest.raises(InvalidSubsetSizeError):
        validate_h(h, 10)

def test_consistency_factor_without_trimming():
    assert consistency_factor(50, 50, 3) == 1.0

def test_consistency_factor_one_dimension():
    """For p=1 the trimmed second moment of a standard normal is integrated directly."""
    a = stats.norm.ppf(0.875)
    trimmed, _ = integrate.quad(lambda z: z ** 2 * stats.norm.pdf(z), -a, a)
    assert consistency_factor(75, 100, 1) == pytest.approx(0.75 / trimmed, rel=1e-8)

def test_consistency_factor_monotone():
    n, p = 40, 3
    values = [consistency_factor(h, n, p) for h in range(20, n + 1)]
    assert all(v >= 1.0 for v in values)
    assert all(a >= b for a, b in zip(values, values[1:]))

def test_consistency_factor_rejects_bad_h():
    with pytest.raises(InvalidSubsetSizeError):
        consistency_factor(3, 10, 2)

def test_regularized_scatter_diagonal():
    W = np.array([[2.0, 0.0], [-2.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    subset = SubsetIndex.from_iterable(range(4))
    K = regularized_scatter(subset, W, rho=0.5, c_alpha=1.0)
    np.testing.assert_allclose(K.scatter, np.diag([2.0, 0.5]))
    np.testing.assert_allclose(K.core, np.diag([1.5, 0.75]))
    np.testing.assert_allclose(K.eigenvalues, [0.75, 1.5])

def test_regularized_scatter_endpoints(rng):
    W = rng.standard_normal((12, 3))
    subset = SubsetIndex.from_iterable(range(8))
    np.testing.assert_allclose(regularized_scatter(subset, W, 1.0, 1.3).core, np.eye(3))
    K = regularized_scatter(subset, W, 0.0, 1.0)
    np.testing.assert_allclose(K.core, np.cov(W[:8], rowvar=False, bias=True), atol=1e-12)

def test_regularized_scatter_eigenvalue_floor(rng):
    """With h < p the subset scatter is singular but the core stays above rho."""
    W = rng.standard_normal((10, 20))
    subset = SubsetIndex.from_iterable(range(6))
    K = regularized_scatter(subset, W, 0.2, 1.5)
    assert K.min_eigenvalue >= 0.2 - 1e-12
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(K.core)), K.eigenvalues, atol=1e-10)

def test_subset_eigenvalues_gram_route(rng):
    W = rng.standard_normal((10, 7))
    subset = SubsetIndex.from_iterable([0, 2, 4, 6])
    centered = W[subset.array] - W[subset.array].mean(axis=0)
    expected = np.clip(np.linalg.eigvalsh(centered.T @ centered / 4), 0.0, None)
    np.testing.assert_allclose(subset_eigenvalues(W, subset), np.sort(expected), atol=1e-12)

def test_objective_identity_and_diagonal():
    assert objective(_core([1.0, 1.0, 1.0])) == pytest.approx(1.0)
    assert objective(_core([4.0, 1.0])) == pytest.approx(2.0)

def test_objective_matches_determinant(rng):
    A = rng.standard_normal((5, 5))
    K = A @ A.T + 0.5 * np.eye(5)
    eigenvalues = np.linalg.eigvalsh(K)
    assert objective_from_eigenvalues(eigenvalues) == pytest.approx(np.linalg.det(K) ** 0.2, rel=1e-10)

def test_objective_large_dimension_does_not_overflow():
    assert objective_from_eigenvalues(np.full(800, 50.0)) == pytest.approx(50.0)

def test_objective_rejects_singular():
    with pytest.raises(SingularScatterError) as exc:
        objective(_core([0.0, 1.0], rho=0.0))
    assert exc.value.error_message == "singular, regularization required"

def test_calibrate_rho_already_conditioned():
    assert calibrate_rho([1.0, 2.0, 500.0]) == 0.0
    assert calibrate_rho([3.0, 3.0]) == 0.0

def test_calibrate_rho_closed_form():
    rho = calibrate_rho([10.0, 0.0])
    assert rho == pytest.approx(10.0 / 1009.0, abs=1e-12)
    assert (rho + (1 - rho) * 10.0) / rho == pytest.approx(1000.0, rel=1e-9)

def test_calibrate_rho_unit_spread():
    assert calibrate_rho([0.0, 1.0]) == pytest.approx(0.001, rel=1e-9)

def test_calibrate_rho_zero_scatter_uses_fallback():
    assert calibrate_rho([0.0, 0.0, 0.0]) == 0.1
    assert calibrate_rho([0.0, 0.0], fallback=0.25) == 0.25

def test_calibrate_rho_clips_negative_noise():
    assert calibrate_rho([-1e-18, 10.0]) == pytest.approx(10.0 / 1009.0, abs=1e-12)

def test_calibrate_rho_reaches_bound(rng):
    for _ in range(50):
        eigenvalues = np.exp(rng.uniform(-12, 4, size=8))
        rho = calibrate_rho(eigenvalues, kappa_max=100.0)
        core = rho + (1 - rho) * eigenvalues
        assert core.max() / core.min() <= 100.0 * (1 + 1e-9)
        if rho > 0:
            assert core.max() / core.min() == pytest.approx(100.0, rel=1e-6)
