"""
Builders for models and services used by the CLI commands.

Probit fits are cached per dataset so sweeps over the proposal scale reuse a
single MLE.
"""
from functools import lru_cache
from typing import Optional

from src.config.logging_config import logger
from src.config.settings import settings
from src.domain.experiments import ExperimentConfig
from src.domain.probit import MleFit, ProbitData
from src.domain.targets import ModelPair
from src.repositories.datasets import load_probit_csv
from src.services.block_engine import BlockImhEngine
from src.services.harness import ExperimentHarness
from src.services.models import toy_model
from src.services.probit import fit_mle, probit_model
from src.services.reports import ReportsService


@lru_cache(maxsize=8)
def get_probit_data(path: str, covariates: tuple[str, ...], response: str,
                    intercept: bool, standardize: bool) -> ProbitData:
    return load_probit_csv(path, covariates, response, intercept=intercept, standardize=standardize)


@lru_cache(maxsize=8)
def get_probit_fit(path: str, covariates: tuple[str, ...], response: str,
                   intercept: bool, standardize: bool) -> MleFit:
    data = get_probit_data(path, covariates, response, intercept, standardize)
    return fit_mle(data, tol=settings.MLE_TOL, max_iter=settings.MLE_MAX_ITER, logger=logger)


def build_model(cfg: ExperimentConfig) -> ModelPair:
    if cfg.model == "toy":
        return toy_model(normalized=cfg.normalized_densities)
    key = (cfg.data_path, cfg.covariates, cfg.response, cfg.intercept, cfg.standardize)
    return probit_model(get_probit_data(*key), cfg.scale_c, fit=get_probit_fit(*key))


def get_engine(workers: int) -> BlockImhEngine:
    return BlockImhEngine(logger, workers=workers)


def get_harness(workers: int) -> ExperimentHarness:
    return ExperimentHarness(logger, build_model, workers=workers)


def get_reports_service(config_comment: Optional[dict] = None) -> ReportsService:
    return ReportsService(logger, config_comment)
