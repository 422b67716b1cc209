from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.domain.estimators import ESTIMATOR_NAMES
from src.domain.experiments import ExperimentConfig
from src.domain.permutations import PermutationScheme
from src.services.estimators import TEST_FUNCTIONS


class RunRequestSchema(BaseModel):
    model: Literal["toy", "probit"] = Field("toy", description="Target/proposal pair")
    p: List[int] = Field(default_factory=lambda: [16], description="Block size(s)")
    r: Optional[int] = Field(None, ge=1, description="Chains per block (defaults to p)")
    blocks: List[int] = Field(default_factory=lambda: [1], description="Number(s) of blocks")
    perm_scheme: str = Field("random", description="Permutation scheme name")
    scale_c: List[float] = Field(default_factory=lambda: [3.0], description="Probit proposal scale(s)")
    seed: int = Field(..., ge=0, description="Root seed")
    burn_in_blocks: int = Field(0, ge=0, description="Leading blocks discarded by every estimator")
    data: Optional[str] = Field(None, description="Probit CSV path")
    covariates: List[str] = Field(default_factory=lambda: ["glu", "bp", "ped"])
    response: str = Field("type", min_length=1)
    intercept: bool = False
    standardize: bool = False
    h: str = Field("identity", description="Test function name")
    normalized_densities: bool = False
    workers: int = Field(1, ge=1)

    @field_validator("p", "blocks")
    @classmethod
    def positive_sizes(cls, v):
        if not v or any(x < 1 for x in v):
            raise ValueError("sizes must be positive integers")
        return v

    @field_validator("scale_c")
    @classmethod
    def positive_scales(cls, v):
        if not v or any(c <= 0 for c in v):
            raise ValueError("scale factors must be positive")
        return v

    @field_validator("perm_scheme")
    @classmethod
    def known_scheme(cls, v):
        PermutationScheme.from_name(v)
        return v

    @field_validator("h")
    @classmethod
    def known_test_function(cls, v):
        if v not in TEST_FUNCTIONS:
            raise ValueError(f"unknown test function '{v}'")
        return v

    @field_validator("covariates")
    @classmethod
    def non_empty_covariates(cls, v):
        v = [c.strip() for c in v if c.strip()]
        if not v:
            raise ValueError("at least one covariate is required")
        return v

    @model_validator(mode="after")
    def consistent(self):
        if self.model == "probit" and not self.data:
            raise ValueError("--data is required with the probit model")
        if self.model == "probit" and self.normalized_densities:
            raise ValueError("--normalized-densities is only available for the toy model")
        if self.burn_in_blocks >= min(self.blocks):
            raise ValueError("--burn-in-blocks must be smaller than --blocks")
        scheme = PermutationScheme.from_name(self.perm_scheme)
        if scheme is PermutationScheme.HALF_RANDOM_HALF_REVERSED:
            for p in self.p:
                if (self.r or p) % 2:
                    raise ValueError("half-reversed needs an even number of chains per block")
        return self

    @property
    def scheme(self) -> PermutationScheme:
        return PermutationScheme.from_name(self.perm_scheme)

    def to_config(self, replications: int = 2, estimators=ESTIMATOR_NAMES) -> ExperimentConfig:
        return ExperimentConfig(
            model=self.model,
            p=self.p[0],
            b=self.blocks[0],
            r=self.r,
            replications=replications,
            seed=self.seed,
            scheme=self.scheme,
            estimators=tuple(estimators),
            h=self.h,
            burn_in_blocks=self.burn_in_blocks,
            normalized_densities=self.normalized_densities,
            data_path=self.data,
            covariates=tuple(self.covariates),
            response=self.response,
            scale_c=self.scale_c[0],
            intercept=self.intercept,
            standardize=self.standardize,
        )


class BenchRequestSchema(RunRequestSchema):
    replications: int = Field(..., ge=2, description="Independent replications")

    def to_config(self, estimators=ESTIMATOR_NAMES) -> ExperimentConfig:
        return super().to_config(replications=self.replications, estimators=estimators)
