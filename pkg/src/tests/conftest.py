"""
Test configuration and fixtures
"""
import logging

import numpy as np
import pytest
from click.testing import CliRunner

from src.config.settings import settings
from src.repositories.datasets import PIMA_COVARIATES, load_probit_csv, simulate_probit_data, write_probit_csv
from src.services.models import toy_model


@pytest.fixture
def logger():
    """Create a test logger"""
    return logging.getLogger("test")


@pytest.fixture
def toy():
    """Normal target / Cauchy proposal pair"""
    return toy_model()


@pytest.fixture
def runner():
    """Click test runner for the command line"""
    return CliRunner()


@pytest.fixture(scope="session")
def pima_like_data():
    """
    Synthetic data shaped like the 332-row Pima table (glu, bp, ped; raw
    scales, no intercept) drawn from the latent-variable probit model.
    """
    rng = np.random.default_rng(332)
    n = 332
    X = np.column_stack([
        np.clip(rng.normal(120.0, 30.0, n), 55.0, 200.0),
        np.clip(rng.normal(70.0, 12.0, n), 35.0, 110.0),
        rng.gamma(2.0, 0.25, n),
    ])
    theta = np.array([0.02, -0.035, 0.6])
    return simulate_probit_data(X, theta, rng, names=PIMA_COVARIATES)


@pytest.fixture(scope="session")
def pima_csv(pima_like_data, tmp_path_factory):
    """The synthetic Pima-style data written as a CSV with a `type` response column"""
    path = tmp_path_factory.mktemp("data") / "pima_like.csv"
    write_probit_csv(pima_like_data, path)
    return path


@pytest.fixture(scope="session")
def pima_path():
    """The 332-row Pima-style table shipped under data/"""
    return settings.PIMA_DATA_PATH


@pytest.fixture(scope="session")
def pima_data(pima_path):
    return load_probit_csv(pima_path)
