"""
Target/proposal pairs and log-weight evaluation.

Densities are handled as unnormalized natural-log densities; only differences
of log-weights ever enter the samplers.
"""
from __future__ import annotations
import math
import threading

import numpy as np

from src.domain.errors import NonFiniteDensityError
from src.domain.targets import ModelPair, Point

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


class BaseModelPair:
    """Batch methods and the start-point hook derived from the single-point API.

    Subclasses implement `log_target`, `log_proposal` and `sample_proposal`
    and may override the batch forms with vectorized versions.
    """
    dimension: int = 1
    coordinate_names: tuple[str, ...] = ("x",)

    def log_targets(self, points: np.ndarray) -> np.ndarray:
        return np.array([self.log_target(x) for x in points], dtype=float)

    def log_proposals(self, points: np.ndarray) -> np.ndarray:
        return np.array([self.log_proposal(x) for x in points], dtype=float)

    def sample_proposals(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.stack([self.sample_proposal(rng) for _ in range(size)]).reshape(size, self.dimension)

    def initial_point(self, rng: np.random.Generator) -> Point:
        return self.sample_proposal(rng)


class ToyModel(BaseModelPair):
    """Standard normal target with a standard Cauchy proposal.

    With the default constant-free convention
    log w(x) = log(1 + x^2) - x^2 / 2, so log w(0) = 0.
    """
    dimension = 1
    coordinate_names = ("x",)

    def __init__(self, normalized: bool = False):
        self.normalized = normalized
        self._target_const = -_LOG_SQRT_2PI if normalized else 0.0
        self._proposal_const = -_LOG_PI if normalized else 0.0

    def log_target(self, x: Point) -> float:
        x = float(np.asarray(x).reshape(-1)[0])
        return -0.5 * x * x + self._target_const

    def log_proposal(self, x: Point) -> float:
        x = float(np.asarray(x).reshape(-1)[0])
        return -math.log1p(x * x) + self._proposal_const

    def sample_proposal(self, rng: np.random.Generator) -> Point:
        return np.array([rng.standard_cauchy()])

    def log_targets(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float).reshape(-1)
        return -0.5 * x * x + self._target_const

    def log_proposals(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float).reshape(-1)
        return -np.log1p(x * x) + self._proposal_const

    def sample_proposals(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.standard_cauchy(size).reshape(size, 1)

    def initial_point(self, rng: np.random.Generator) -> Point:
        # exact draw from the target: stationary start
        return np.array([rng.standard_normal()])


def toy_model(normalized: bool = False) -> ToyModel:
    return ToyModel(normalized=normalized)


def log_weight(model: ModelPair, x: Point) -> float:
    """log pi(x) - log mu(x); raises NonFiniteDensityError when undefined."""
    log_mu = model.log_proposal(x)
    if not np.isfinite(log_mu):
        raise NonFiniteDensityError(f"Proposal log-density is not finite at {np.asarray(x).tolist()}")
    value = model.log_target(x) - log_mu
    if not np.isfinite(value):
        raise NonFiniteDensityError(f"Log-weight is not finite at {np.asarray(x).tolist()}")
    return float(value)


def log_weights(model: ModelPair, points: np.ndarray) -> np.ndarray:
    """Vectorized `log_weight` over the rows of `points`."""
    log_mu = model.log_proposals(points)
    if not np.all(np.isfinite(log_mu)):
        raise NonFiniteDensityError("Proposal log-density is not finite for some points")
    values = model.log_targets(points) - log_mu
    if not np.all(np.isfinite(values)):
        raise NonFiniteDensityError("Log-weight is not finite for some points")
    return values


class CountingModelPair:
    """Wraps a model and counts target-density evaluations (one per point)."""

    def __init__(self, inner: ModelPair):
        self._inner = inner
        self._lock = threading.Lock()
        self._count = 0
        self.dimension = inner.dimension
        self.coordinate_names = inner.coordinate_names

    @property
    def inner(self) -> ModelPair:
        return self._inner

    @property
    def target_evaluations(self) -> int:
        return self._count

    def reset(self) -> None:
        with self._lock:
            self._count = 0

    def _add(self, k: int) -> None:
        with self._lock:
            self._count += k

    def log_target(self, x: Point) -> float:
        self._add(1)
        return self._inner.log_target(x)

    def log_targets(self, points: np.ndarray) -> np.ndarray:
        self._add(len(points))
        return self._inner.log_targets(points)

    def log_proposal(self, x: Point) -> float:
        return self._inner.log_proposal(x)

    def log_proposals(self, points: np.ndarray) -> np.ndarray:
        return self._inner.log_proposals(points)

    def sample_proposal(self, rng: np.random.Generator) -> Point:
        return self._inner.sample_proposal(rng)

    def sample_proposals(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self._inner.sample_proposals(rng, size)

    def initial_point(self, rng: np.random.Generator) -> Point:
        return self._inner.initial_point(rng)
