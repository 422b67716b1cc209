"""
Repositories package for the block IMH benchmarks.

Holds data access for the probit experiments: CSV ingestion of
covariate/response tables and a latent-variable simulator.

Usage:
    from src.repositories import load_probit_csv

    data = load_probit_csv("pima.csv", ("glu", "bp", "ped"), "type")
"""

from .datasets import (
    PIMA_COVARIATES,
    PIMA_RESPONSE,
    build_probit_data,
    load_probit_csv,
    simulate_probit_data,
    write_probit_csv,
)

__all__ = [
    "PIMA_COVARIATES",
    "PIMA_RESPONSE",
    "build_probit_data",
    "load_probit_csv",
    "simulate_probit_data",
    "write_probit_csv",
]
