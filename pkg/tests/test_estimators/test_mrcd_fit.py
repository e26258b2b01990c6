import itertools

import numpy as np
import pytest

from mrcdkit.core.exceptions import (
    DegenerateVariableError,
    DimensionMismatchError,
    InvalidOptionError,
    InvalidSubsetSizeError,
)
from mrcdkit.domain.models import MrcdOptions, SubsetIndex, TargetKind
from mrcdkit.domain.services.mrcd import (
    consistency_factor,
    default_h,
    fit,
    flag_outliers,
    outlier_cutoff,
    precision,
    prepare,
    robust_distances,
    scan_h,
)
from mrcdkit.domain.services.mrcd.estimator import search_subset
from mrcdkit.domain.services.mrcd.scatter import core_eigenvalues, objective_from_eigenvalues, subset_eigenvalues


def test_default_h():
    assert default_h(10) == 8
    assert default_h(100) == 75
    assert default_h(3, MrcdOptions(default_h_fraction=0.5)) == 2

def test_fit_shapes_and_inverse(gaussian_data):
    result = fit(gaussian_data, h=90)
    assert result.location.shape == (4,)
    assert result.scatter.shape == (4, 4)
    assert result.subset.h == 90
    assert result.distances.shape == (120,)
    np.testing.assert_allclose(result.scatter @ result.precision, np.eye(4), atol=1e-8)
    np.testing.assert_allclose(result.scatter, result.scatter.T)

def test_fit_default_h(gaussian_data):
    assert fit(gaussian_data).h == 90

def _subset_covariance(X, subset):
    return np.cov(X[subset.array], rowvar=False, bias=True)

def test_unregularized_scatter_is_scaled_subset_covariance(gaussian_data):
    result = fit(gaussian_data, h=80)
    assert result.rho == 0.0
    np.testing.assert_allclose(result.scatter, result.c_alpha * _subset_covariance(gaussian_data, result.subset), rtol=1e-8)

@pytest.mark.parametrize("target", ["equicorrelation", "rank"])
def test_unregularized_scatter_does_not_depend_on_target(gaussian_data, target):
    """With rho = 0 a non-identity target only changes coordinates, never the fitted scale."""
    result = fit(gaussian_data, h=90, target=target)
    assert result.rho == 0.0
    assert result.target.kind != TargetKind.IDENTITY
    np.testing.assert_allclose(result.scatter, result.c_alpha * _subset_covariance(gaussian_data, result.subset), rtol=1e-8)

def test_regularized_scatter_maps_the_search_core(rng):
    """The fitted scatter is the back-transformed core whose determinant was minimized."""
    X = rng.standard_normal((30, 40)) @ np.diag(np.linspace(0.5, 3.0, 40))
    result = fit(X, target="equicorrelation")
    assert 0 < result.rho < 1

    B = result.target.sqrt_factor * result.scale[:, None]
    np.testing.assert_allclose(result.scatter, B @ result.regularized_core @ B.T, rtol=1e-8, atol=1e-12)
    spectrum = np.linalg.eigvalsh(result.regularized_core)
    assert result.objective == pytest.approx(np.exp(np.mean(np.log(spectrum))), rel=1e-8)
    assert spectrum.max() / spectrum.min() <= 1000.0 * (1 + 1e-9)

def test_full_subset_is_classical_covariance(gaussian_data):
    result = fit(gaussian_data, h=120)
    assert result.rho == 0.0
    assert result.c_alpha == 1.0
    np.testing.assert_allclose(result.scatter, np.cov(gaussian_data, rowvar=False, bias=True), rtol=1e-8)
    np.testing.assert_allclose(result.location, gaussian_data.mean(axis=0), atol=1e-10)

def test_clean_data_reduces_to_mcd(rng):
    X = rng.standard_normal((200, 5))
    prepared = prepare(X)
    regularized = fit(X, h=150, prepared=prepared)
    mcd = fit(X, h=150, options=MrcdOptions(rho=0.0), prepared=prepared)

    assert regularized.rho == 0.0
    assert not regularized.rho_forced
    assert mcd.rho_forced
    assert regularized.subset == mcd.subset
    np.testing.assert_allclose(regularized.scatter, mcd.scatter)

def test_brute_force_optimum_rate(rng):
    """On n=10, p=2, h=6 the search hits the minimum over all 210 subsets in at least 90% of trials."""
    n, p, h = 10, 2, 6
    options = MrcdOptions(rho=0.0)
    c_alpha = consistency_factor(h, n, p)
    hits = 0
    for _ in range(100):
        X = rng.standard_normal((n, p))
        prepared = prepare(X, options=options)
        W = prepared.whitened.W
        found = search_subset(prepared, h, options).objective
        best = min(
            objective_from_eigenvalues(core_eigenvalues(subset_eigenvalues(W, SubsetIndex(rows)), 0.0, c_alpha))
            for rows in itertools.combinations(range(n), h)
        )
        assert found >= best * (1 - 1e-10)
        hits += found <= best * (1 + 1e-10)
    assert hits >= 90

def test_high_dimension_is_regularized(rng):
    X = rng.standard_normal((40, 100))
    result = fit(X)
    assert result.h == 30
    assert 0 < result.rho < 1
    assert result.core_condition_number <= 1000.0 * (1 + 1e-9)
    assert np.linalg.eigvalsh(result.regularized_core).min() >= result.rho - 1e-10
    assert np.linalg.eigvalsh(result.scatter).min() > 0

@pytest.mark.parametrize("target", ["identity", "equicorrelation"])
def test_woodbury_precision_matches_direct(rng, target):
    X = rng.standard_normal((40, 100))
    X[:, 50:] += 0.5 * X[:, :50]
    result = fit(X, target=target)
    assert result.c_alpha > 1.0
    smw = precision(result, method="smw")
    direct = precision(result, method="direct")
    assert np.abs(smw - direct).max() <= 1e-9 * max(1.0, np.abs(direct).max())
    np.testing.assert_allclose(result.scatter @ smw, np.eye(100), atol=1e-8)

@pytest.mark.slow
def test_precision_inverts_scatter_at_p_800(rng):
    X = rng.standard_normal((100, 800)) * np.linspace(0.5, 2.0, 800)
    result = fit(X)
    assert 0 < result.rho < 1
    assert np.abs(result.scatter @ result.precision - np.eye(800)).max() <= 1e-8

def test_precision_unknown_method(gaussian_data):
    with pytest.raises(InvalidOptionError):
        precision(fit(gaussian_data), method="qr")

def test_full_regularization_precision(gaussian_data):
    result = fit(gaussian_data, options=MrcdOptions(rho=1.0))
    np.testing.assert_allclose(result.precision, np.diag(1.0 / result.scale ** 2), rtol=1e-10, atol=1e-14)

def test_diagonal_scale_equivariance(gaussian_data):
    a = np.array([2.0, 0.5, 10.0, 3.0])
    b = np.array([1.0, -4.0, 100.0, 0.0])
    base = fit(gaussian_data, h=90)
    moved = fit(gaussian_data * a + b, h=90)

    assert moved.subset == base.subset
    np.testing.assert_allclose(moved.location, base.location * a + b, rtol=1e-8)
    np.testing.assert_allclose(moved.scatter, base.scatter * np.outer(a, a), rtol=1e-8, atol=1e-12)
    np.testing.assert_allclose(moved.distances, base.distances, rtol=1e-8)

def test_equicorrelation_target_fit(gaussian_data):
    result = fit(gaussian_data, h=90, target="equicorrelation")
    assert result.target.kind == TargetKind.EQUICORRELATION
    np.testing.assert_allclose(result.scatter @ result.precision, np.eye(4), atol=1e-8)

def test_fit_is_deterministic(contaminated_data):
    first = fit(contaminated_data, h=75)
    second = fit(contaminated_data, h=75)
    assert first.subset == second.subset
    np.testing.assert_array_equal(first.scatter, second.scatter)

def test_parallel_fit_matches_serial(contaminated_data):
    serial = fit(contaminated_data, h=75)
    parallel = fit(contaminated_data, h=75, options=MrcdOptions(n_jobs=4))
    assert serial.subset == parallel.subset
    np.testing.assert_array_equal(serial.scatter, parallel.scatter)

def test_outliers_are_excluded_and_flagged(contaminated_data):
    result = fit(contaminated_data, h=75)
    assert not set(range(10)) & set(result.subset.indices)
    flagged = flag_outliers(result.distances, outlier_cutoff(result.distances, 3))
    assert set(range(10)) <= set(flagged)
    assert result.best_start in [s.index for s in result.starts]

def test_robust_distances(contaminated_data):
    result = fit(contaminated_data, h=75)
    np.testing.assert_allclose(robust_distances(result, contaminated_data), result.distances)
    assert robust_distances(result, result.location[None, :])[0] == pytest.approx(0.0, abs=1e-12)

def test_robust_distances_dimension_mismatch(contaminated_data):
    result = fit(contaminated_data, h=75)
    with pytest.raises(DimensionMismatchError):
        robust_distances(result, np.zeros((3, 2)))

def test_fit_rejects_bad_h(gaussian_data):
    with pytest.raises(InvalidSubsetSizeError):
        fit(gaussian_data, h=59)
    with pytest.raises(InvalidSubsetSizeError):
        fit(gaussian_data, h=121)

def test_fit_rejects_degenerate_column(rng):
    X = rng.standard_normal((30, 3))
    X[:20, 1] = 2.0
    with pytest.raises(DegenerateVariableError) as exc:
        fit(X)
    assert exc.value.error_details["column_index"] == 1

def test_scan_h_rows(contaminated_data):
    rows = scan_h(contaminated_data, range(60, 65))
    assert [row.h for row in rows] == [60, 61, 62, 63, 64]
    assert rows[0].frobenius_gap is None
    assert all(row.frobenius_gap >= 0 for row in rows[1:])
    assert all(row.objective > 0 for row in rows)

def test_scan_h_matches_single_fits(contaminated_data):
    rows = scan_h(contaminated_data, [70, 80])
    assert rows[1].frobenius_gap is None
    assert rows[1].objective == pytest.approx(fit(contaminated_data, h=80).objective)

def test_scan_h_detects_contamination_jump(contaminated_data):
    """Admitting the first shifted row makes both curves jump."""
    rows = scan_h(contaminated_data, range(85, 93))
    by_h = {row.h: row for row in rows}
    assert by_h[90].objective / by_h[89].objective < 1.15
    assert by_h[91].objective / by_h[90].objective > 1.4
    assert by_h[91].frobenius_gap > 5 * by_h[90].frobenius_gap

def test_scan_h_errors(contaminated_data):
    with pytest.raises(InvalidSubsetSizeError):
        scan_h(contaminated_data, [])
    with pytest.raises(InvalidSubsetSizeError):
        scan_h(contaminated_data, [40, 60])
