"""
Probit data access: CSV ingestion and a latent-variable simulator.

CSV layout: a header row, comma separated, one observation per row. The
response column holds 0/1 (or Yes/No, as in the R MASS Pima tables).
For the Pima Indian benchmark the covariates are glu, bp and ped
(coefficients theta_1, theta_2, theta_3) and the response is `type`.
"""
from __future__ import annotations
import csv
from pathlib import Path
from typing import Sequence

import numpy as np

from src.domain.errors import DatasetError
from src.domain.probit import ProbitData

PIMA_COVARIATES = ("glu", "bp", "ped")
PIMA_RESPONSE = "type"

_RESPONSE_ALIASES = {"0": 0.0, "1": 1.0, "no": 0.0, "yes": 1.0}


def _parse_response(cell: str, row: int, column: str) -> float:
    key = cell.strip().lower()
    if key in _RESPONSE_ALIASES:
        return _RESPONSE_ALIASES[key]
    try:
        value = float(key)
    except ValueError:
        raise DatasetError(f"Row {row}: response '{column}' has non-numeric value '{cell}'") from None
    if value not in (0.0, 1.0):
        raise DatasetError(f"Row {row}: response '{column}' must be 0 or 1, got '{cell}'")
    return value


def _parse_number(cell: str, row: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DatasetError(f"Row {row}: column '{column}' has non-numeric value '{cell}'") from None
    if not np.isfinite(value):
        raise DatasetError(f"Row {row}: column '{column}' is not finite")
    return value


def build_probit_data(
    X: np.ndarray,
    y: np.ndarray,
    names: Sequence[str],
    intercept: bool = False,
    standardize: bool = False,
) -> ProbitData:
    """Validate a design matrix and response and wrap them as ProbitData."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    names = tuple(names)
    if X.ndim != 2 or len(X) != len(y):
        raise DatasetError("Design matrix must be (n, d) with one response per row")
    if not np.all((y == 0.0) | (y == 1.0)):
        raise DatasetError("Response values must all be 0 or 1")
    if standardize:
        spread = X.std(axis=0)
        if np.any(spread == 0):
            raise DatasetError("Cannot standardize a constant covariate")
        X = (X - X.mean(axis=0)) / spread
    if intercept:
        X = np.column_stack([np.ones(len(X)), X])
        names = ("intercept",) + names
    n, d = X.shape
    if n <= d:
        raise DatasetError(f"Need more observations than covariates (n={n}, d={d})")
    if np.linalg.matrix_rank(X.T @ X) < d:
        raise DatasetError("X'X is singular; covariates are collinear")
    return ProbitData(X=X, y=y, names=names)


def load_probit_csv(
    path: str | Path,
    covariate_names: Sequence[str] = PIMA_COVARIATES,
    response_name: str = PIMA_RESPONSE,
    intercept: bool = False,
    standardize: bool = False,
) -> ProbitData:
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"Data file not found: {path}")
    with path.open(newline="", encoding="utf-8-sig") as handle:
        reader = csv.DictReader(handle)
        header = [h.strip() for h in (reader.fieldnames or [])]
        reader.fieldnames = header
        missing = [c for c in list(covariate_names) + [response_name] if c not in header]
        if missing:
            raise DatasetError(f"Missing column(s) in {path.name}: {', '.join(missing)}")
        rows_X, rows_y = [], []
        for line, record in enumerate(reader, start=2):
            for column in list(covariate_names) + [response_name]:
                if record[column] is None or not record[column].strip():
                    raise DatasetError(f"Row {line}: missing value for '{column}'")
            rows_X.append([_parse_number(record[c], line, c) for c in covariate_names])
            rows_y.append(_parse_response(record[response_name], line, response_name))
    if not rows_X:
        raise DatasetError(f"No observations in {path.name}")
    return build_probit_data(np.array(rows_X), np.array(rows_y), covariate_names,
                             intercept=intercept, standardize=standardize)


def simulate_probit_data(
    X: np.ndarray,
    theta: np.ndarray,
    rng: np.random.Generator,
    names: Sequence[str] | None = None,
) -> ProbitData:
    """y_i = 1{x_i' theta + eps_i > 0} with eps_i ~ N(0, 1)."""
    X = np.asarray(X, dtype=float)
    z = X @ np.asarray(theta, dtype=float) + rng.standard_normal(len(X))
    names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(X.shape[1]))
    return build_probit_data(X, (z > 0).astype(float), names)


def write_probit_csv(data: ProbitData, path: str | Path, response_name: str = PIMA_RESPONSE) -> None:
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(data.names) + [response_name])
        for xi, yi in zip(data.X, data.y):
            writer.writerow([repr(float(v)) for v in xi] + [int(yi)])
