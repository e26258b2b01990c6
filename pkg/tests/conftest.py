import os
import tempfile

# The logger manager is created on first import of mrcdkit and reads these.
os.environ.setdefault("MRCDKIT_LOG_DIR", tempfile.mkdtemp(prefix="mrcdkit-logs-"))
os.environ["APP_ENV"] = "test"

from configparser import ConfigParser  # noqa: E402

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from mrcdkit.utils.handlers import ConfigurationHandler, EnvironmentHandler  # noqa: E402


def _reset_handlers():
    ConfigurationHandler._initialized = False
    ConfigurationHandler._parser = ConfigParser()
    ConfigurationHandler._config_dir = None
    ConfigurationHandler._config_file = None
    ConfigurationHandler._current_env = None
    EnvironmentHandler._initialized = False
    EnvironmentHandler._env_path = None


@pytest.fixture(autouse=True)
def reset_handlers():
    """Every test starts with unloaded handlers."""
    _reset_handlers()
    yield
    _reset_handlers()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def gaussian_data(rng):
    """Clean correlated Gaussian sample, n=120, p=4."""
    sigma = np.array([
        [1.0, 0.5, 0.2, 0.0],
        [0.5, 2.0, 0.3, 0.1],
        [0.2, 0.3, 1.5, 0.4],
        [0.0, 0.1, 0.4, 0.8],
    ])
    return rng.multivariate_normal(np.zeros(4), sigma, size=120)


@pytest.fixture
def contaminated_data(rng):
    """n=100, p=3; rows 0..9 are shifted far away from the bulk."""
    X = rng.standard_normal((100, 3))
    X[:10] += np.array([12.0, -12.0, 12.0])
    return X
