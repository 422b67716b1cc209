"""
Reports service for writing experiment results.

Handles CSV rendering of variance tables, estimator reports, sampled chains
and probit MLE fits. Floats are written with 17 significant digits so that
identical runs produce byte-identical files.
"""
from __future__ import annotations
from io import StringIO
from logging import Logger
from typing import Optional
import csv
import json

import numpy as np

from src.domain.estimators import EstimatorReport
from src.domain.experiments import VARIANCE_TABLE_HEADER, VarianceTable
from src.domain.probit import MleFit


def fmt(value: float) -> str:
    return format(float(value), ".17g")


class ReportsService:
    """Service for rendering results as CSV text."""

    def __init__(self, logger: Logger, config_comment: Optional[dict] = None):
        self._logger = logger
        self._config_comment = config_comment

    def _start(self) -> tuple[StringIO, csv.writer]:
        buffer = StringIO()
        if self._config_comment is not None:
            buffer.write("# config: " + json.dumps(self._config_comment, sort_keys=True, default=str) + "\n")
        return buffer, csv.writer(buffer, lineterminator="\n")

    def variance_table_csv(self, table: VarianceTable) -> str:
        """
        Render a variance table.

        Args:
            table: rows produced by the experiment harness

        Returns:
            CSV text with the header `scheme,estimator,p,r,b,coord,variance,...`
        """
        buffer, writer = self._start()
        writer.writerow(VARIANCE_TABLE_HEADER)
        for row in table.rows:
            writer.writerow([
                row.scheme, row.estimator, row.p, row.r, row.b, row.coord,
                fmt(row.variance), fmt(row.reduction_pct), fmt(row.se_variance), fmt(row.acceptance_rate),
            ])
        self._logger.info(f"Generated variance table CSV with {len(table.rows)} rows")
        return buffer.getvalue()

    def sample_csv(self, report: EstimatorReport, chain: np.ndarray, coordinate_names: tuple[str, ...],
                   acceptance_rate: Optional[float] = None) -> str:
        """Estimator report section, a blank line, then the selected chain."""
        buffer, writer = self._start()
        writer.writerow(["estimator", "coord", "estimate"])
        for name, values in report.as_dict().items():
            for coord, value in zip(report.labels, values):
                writer.writerow([name, coord, fmt(value)])
        if acceptance_rate is not None:
            writer.writerow(["acceptance_rate", "", fmt(acceptance_rate)])
        buffer.write("\n")
        writer.writerow(["t"] + list(coordinate_names))
        for t, point in enumerate(chain, start=1):
            writer.writerow([t] + [fmt(v) for v in point])
        self._logger.info(f"Generated sample CSV with {len(chain)} chain states")
        return buffer.getvalue()

    def mle_csv(self, fit: MleFit, names: tuple[str, ...]) -> str:
        """theta_hat as one labeled row, then Sigma_hat as a labeled matrix."""
        buffer, writer = self._start()
        writer.writerow(["quantity"] + list(names))
        writer.writerow(["theta_hat"] + [fmt(v) for v in fit.theta_hat])
        for name, row in zip(names, fit.sigma_hat):
            writer.writerow([f"sigma_hat[{name}]"] + [fmt(v) for v in row])
        return buffer.getvalue()
