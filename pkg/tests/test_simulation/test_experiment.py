from unittest.mock import patch

import numpy as np
import pytest

from mrcdkit.domain.models import DataGeneratingProcess, EstimatorKind, SimConfig
from mrcdkit.domain.services.simulation import generate_replication, replication_rng, run_experiment, run_replication


def _config(**overrides):
    values = dict(panel="smoke", n=60, p=3, replications=2, seed=11, h_fractions=[0.75, 1.0], target="identity")
    values.update(overrides)
    return SimConfig(**values)


def test_single_ogk_cell():
    result = run_experiment(_config(replications=1, estimators=["ogk"]))
    assert len(result.cells) == 1
    cell = result.cells[0]
    assert cell.estimator == EstimatorKind.OGK
    assert cell.h is None and cell.avg_rho is None
    assert cell.mse >= 0
    assert cell.replications == 1 and cell.failures == 0

def test_cells_cover_estimators_and_fractions():
    result = run_experiment(_config())
    keys = [(cell.estimator, cell.h_fraction) for cell in result.cells]
    assert keys == [
        (EstimatorKind.MRCD, 0.75), (EstimatorKind.MRCD, 1.0),
        (EstimatorKind.MCD, 0.75), (EstimatorKind.MCD, 1.0),
        (EstimatorKind.OGK, None),
    ]
    assert result.cell(EstimatorKind.MCD, 0.75).avg_rho == 0.0
    assert result.cell(EstimatorKind.MRCD, 1.0).h == 60
    assert all(cell.panel == "smoke" for cell in result.cells)
    assert len(result.records) == 2 * 5

def test_same_seed_same_result():
    first = run_experiment(_config())
    second = run_experiment(_config())
    assert first.cells == second.cells
    assert first.records == second.records

def test_parallel_replications_match_serial():
    serial = run_experiment(_config(replications=3))
    parallel = run_experiment(_config(replications=3, n_jobs=3))
    assert serial.cells == parallel.cells

def test_replication_streams_are_independent():
    a = replication_rng(3, 0).standard_normal(4)
    b = replication_rng(3, 1).standard_normal(4)
    assert not np.array_equal(a, b)
    np.testing.assert_array_equal(a, replication_rng(3, 0).standard_normal(4))

def test_generate_replication_contaminates():
    cfg = _config(n=100, epsilon=0.2, k=100.0)
    X, sigma = generate_replication(cfg, replication_rng(cfg.seed, 0))
    assert (X.n, X.p) == (100, 3)
    np.testing.assert_allclose(np.diag(sigma), 1.0)
    _, counts = np.unique(X.values, axis=0, return_counts=True)
    assert counts.max() == 20

def test_factor_panel_uses_default_parameters():
    cfg = _config(dgp=DataGeneratingProcess.FACTOR, p=6, estimators=["ogk"], replications=1)
    result = run_experiment(cfg)
    assert result.cells[0].replications == 1

def test_clean_well_conditioned_panel_has_zero_rho():
    cfg = _config(n=200, p=10, h_fractions=[0.75], estimators=["mrcd"], replications=2)
    cell = run_experiment(cfg).cell(EstimatorKind.MRCD, 0.75)
    assert cell.avg_rho == 0.0
    assert cell.failures == 0

def test_fit_failures_are_recorded():
    cfg = _config(estimators=["ogk"], replications=2)
    with patch(
        "mrcdkit.domain.services.simulation.experiment.ogk_fit",
        side_effect=np.linalg.LinAlgError("broken"),
    ):
        result = run_experiment(cfg)
    cell = result.cells[0]
    assert cell.mse is None
    assert cell.failures == 2 and cell.replications == 0
    assert [record.error for record in result.failures] == ["broken", "broken"]

def test_run_replication_records():
    records = run_replication(_config(estimators=["mcd"]), 0)
    assert [record.h for record in records] == [45, 60]
    assert all(record.ok and record.rho == 0.0 for record in records)

def _published_panel(**overrides):
    values = dict(replications=50, seed=2024, n_jobs=4, h_fractions=[0.75], estimators=["mrcd"])
    values.update(overrides)
    return SimConfig(**values)

@pytest.mark.slow
def test_clean_400x200_matches_published_mse():
    result = run_experiment(_published_panel(panel="A", n=400, p=200))
    cell = result.cell(EstimatorKind.MRCD, 0.75)
    assert cell.failures == 0
    assert cell.mse == pytest.approx(0.0035, rel=0.20)
    assert cell.avg_rho == pytest.approx(0.0, abs=5e-5)

@pytest.mark.slow
def test_ten_percent_outliers_800x100_matches_published_mse():
    result = run_experiment(_published_panel(panel="B", n=800, p=100, epsilon=0.1, k=50.0))
    cell = result.cell(EstimatorKind.MRCD, 0.75)
    assert cell.failures == 0
    assert cell.mse == pytest.approx(0.0056, rel=0.25)

@pytest.mark.slow
def test_trimming_beats_breakdown():
    """With 20% outliers at k=50, h = 0.9 n breaks down while h = 0.75 n does not."""
    result = run_experiment(_published_panel(panel="C", n=800, p=100, epsilon=0.2, k=50.0, h_fractions=[0.75, 0.9]))
    robust = result.cell(EstimatorKind.MRCD, 0.75).mse
    broken = result.cell(EstimatorKind.MRCD, 0.9).mse
    assert broken / robust >= 10

@pytest.mark.slow
def test_clean_800x100_ogk_matches_published_mse():
    result = run_experiment(_published_panel(panel="A", n=800, p=100, estimators=["ogk"]))
    cell = result.cell(EstimatorKind.OGK, None)
    assert cell.failures == 0
    assert cell.mse == pytest.approx(0.0014, rel=0.25)
