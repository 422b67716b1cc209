from __future__ import annotations
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .estimators import ESTIMATOR_NAMES
from .permutations import PermutationScheme


@dataclass(frozen=True)
class VarianceRow:
    scheme: str
    estimator: str
    p: int
    r: int
    b: int
    coord: str
    variance: float
    reduction_pct: float
    se_variance: float
    acceptance_rate: float


VARIANCE_TABLE_HEADER = [
    "scheme", "estimator", "p", "r", "b", "coord",
    "variance", "reduction_pct", "se_variance", "acceptance_rate",
]


@dataclass
class VarianceTable:
    rows: list[VarianceRow] = field(default_factory=list)
    replications: int = 0

    @property
    def low_precision(self) -> bool:
        return self.replications < 10

    def extend(self, other: VarianceTable) -> None:
        self.rows.extend(other.rows)
        self.replications = max(self.replications, other.replications)

    def select(self, **criteria) -> list[VarianceRow]:
        return [row for row in self.rows
                if all(getattr(row, key) == value for key, value in criteria.items())]

    def get(self, **criteria) -> VarianceRow:
        found = self.select(**criteria)
        if len(found) != 1:
            raise KeyError(f"Expected one row for {criteria}, found {len(found)}")
        return found[0]


MODEL_NAMES = ("toy", "probit")


@dataclass(frozen=True)
class ExperimentConfig:
    model: str = "toy"
    p: int = 16
    b: int = 1
    r: int | None = None              # None: square blocks, r = p
    replications: int = 1000
    seed: int = 0
    scheme: PermutationScheme = PermutationScheme.RANDOM
    estimators: tuple[str, ...] = ESTIMATOR_NAMES
    h: str = "identity"
    burn_in_blocks: int = 0
    normalized_densities: bool = False
    # probit only
    data_path: str | None = None
    covariates: tuple[str, ...] = ()
    response: str = "type"
    scale_c: float = 3.0
    intercept: bool = False
    standardize: bool = False

    def __post_init__(self) -> None:
        if self.model not in MODEL_NAMES:
            raise ConfigurationError(f"Unknown model '{self.model}'; choose from {MODEL_NAMES}")
        if self.p < 1:
            raise ConfigurationError("p must be at least 1")
        if self.b < 1:
            raise ConfigurationError("b must be at least 1")
        if self.r is not None and self.r < 1:
            raise ConfigurationError("r must be at least 1")
        if self.replications < 2:
            raise ConfigurationError("At least 2 replications are needed to estimate a variance")
        if not 0 <= self.burn_in_blocks < self.b:
            raise ConfigurationError("burn_in_blocks must be smaller than the number of blocks")
        unknown = [e for e in self.estimators if e not in ESTIMATOR_NAMES]
        if unknown:
            raise ConfigurationError(f"Unknown estimator(s): {', '.join(unknown)}")
        if self.model == "probit":
            if not self.data_path:
                raise ConfigurationError("The probit model needs a data file")
            if self.scale_c <= 0:
                raise ConfigurationError("Scale factor c must be positive")
            if self.normalized_densities:
                raise ConfigurationError("Probit posterior constants are unknown; normalized densities are toy-only")

    @property
    def chains(self) -> int:
        return self.p if self.r is None else self.r
