"""
Tests for probit data loading and simulation
"""
import numpy as np
import pytest

from src.domain.errors import DatasetError
from src.repositories.datasets import (
    PIMA_COVARIATES, build_probit_data, load_probit_csv, simulate_probit_data, write_probit_csv,
)


def _write(tmp_path, text):
    path = tmp_path / "data.csv"
    path.write_text(text)
    return path


class TestLoadProbitCsv:
    """Test CSV ingestion"""

    def test_round_trip(self, pima_like_data, pima_csv):
        data = load_probit_csv(pima_csv)
        assert data.names == PIMA_COVARIATES
        assert data.n == 332 and data.d == 3
        np.testing.assert_array_equal(data.X, pima_like_data.X)
        np.testing.assert_array_equal(data.y, pima_like_data.y)

    def test_yes_no_response(self, tmp_path):
        path = _write(tmp_path, "a,b,type\n1,2,Yes\n2,1,No\n3,5,yes\n4,1,no\n")
        data = load_probit_csv(path, ("a", "b"), "type")
        np.testing.assert_array_equal(data.y, [1, 0, 1, 0])

    def test_gram_of_two_rows(self, tmp_path):
        path = _write(tmp_path, "x,type\n1,1\n1,0\n")
        data = load_probit_csv(path, ("x",), "type")
        np.testing.assert_array_equal(data.gram, [[2.0]])

    def test_intercept_and_standardize(self, tmp_path):
        path = _write(tmp_path, "x,type\n1,1\n2,0\n3,1\n4,0\n")
        data = load_probit_csv(path, ("x",), "type", intercept=True, standardize=True)
        assert data.names == ("intercept", "x")
        np.testing.assert_array_equal(data.X[:, 0], 1.0)
        assert data.X[:, 1].mean() == pytest.approx(0.0)
        assert data.X[:, 1].std() == pytest.approx(1.0)

    @pytest.mark.parametrize("text, message", [
        ("x,type\n1,1\n2,2\n3,0\n", "must be 0 or 1"),
        ("x,type\n1,1\nabc,0\n3,0\n", "non-numeric"),
        ("x,type\n1,1\n2,maybe\n3,0\n", "non-numeric"),
        ("z,type\n1,1\n2,0\n", "Missing column"),
        ("x,type\n", "No observations"),
        ("x,type\n1,1\n", "more observations"),
        ("x,type\n1,1\n2\n3,0\n", "missing value"),
        ("x,type\n1,1\n,0\n3,0\n", "missing value"),
    ])
    def test_bad_files(self, tmp_path, text, message):
        with pytest.raises(DatasetError, match=message):
            load_probit_csv(_write(tmp_path, text), ("x",), "type")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError):
            load_probit_csv(tmp_path / "absent.csv")


class TestBuildProbitData:

    def test_collinear_covariates(self):
        X = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with pytest.raises(DatasetError, match="singular"):
            build_probit_data(X, np.array([1.0, 0.0, 1.0]), ("a", "b"))

    def test_constant_covariate_cannot_be_standardized(self):
        with pytest.raises(DatasetError):
            build_probit_data(np.ones((4, 1)), np.array([1.0, 0.0, 1.0, 0.0]), ("a",), standardize=True)


class TestSimulateProbitData:

    def test_default_names_and_binary_response(self, tmp_path):
        rng = np.random.default_rng(3)
        data = simulate_probit_data(rng.normal(size=(50, 2)), np.array([1.0, -1.0]), rng)
        assert data.names == ("x1", "x2")
        assert set(np.unique(data.y)) <= {0.0, 1.0}
        path = tmp_path / "sim.csv"
        write_probit_csv(data, path, response_name="y")
        assert path.read_text().splitlines()[0] == "x1,x2,y"


class TestShippedTable:

    def test_yes_no_table_loads(self, pima_path, pima_data):
        assert open(pima_path).readline().strip() == "glu,bp,ped,type"
        assert pima_data.n == 332
        assert set(np.unique(pima_data.y)) == {0.0, 1.0}
