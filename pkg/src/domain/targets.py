from __future__ import annotations
from typing import Protocol, runtime_checkable

import numpy as np

# A point is a 1-d float array of length `dimension`; a batch of points is (m, dimension).
Point = np.ndarray


#---- Target / proposal interface ----
# All densities are unnormalized natural-log densities. Implementations must be
# safe to call concurrently on distinct inputs (no mutable shared state), and
# every draw takes an explicit generator so callers own determinism.
@runtime_checkable
class ModelPair(Protocol):
    dimension: int
    coordinate_names: tuple[str, ...]

    def log_target(self, x: Point) -> float: ...
    def log_proposal(self, x: Point) -> float: ...
    def sample_proposal(self, rng: np.random.Generator) -> Point: ...

    # batch forms; row i of the result corresponds to row i of `points`
    def log_targets(self, points: np.ndarray) -> np.ndarray: ...
    def log_proposals(self, points: np.ndarray) -> np.ndarray: ...
    def sample_proposals(self, rng: np.random.Generator, size: int) -> np.ndarray: ...

    def initial_point(self, rng: np.random.Generator) -> Point: ...
