from __future__ import annotations
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class TestFunction:
    """h: maps an (m, d) batch of points to an (m, k) array of outputs."""
    __test__ = False  # not a pytest class

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    label: Callable[[str], str] = lambda coord: coord

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.asarray(self.fn(points), dtype=float)
        return out.reshape(len(points), -1)

    def labels(self, coordinate_names: tuple[str, ...]) -> list[str]:
        return [self.label(c) for c in coordinate_names]


ESTIMATOR_NAMES = ("tau1", "tau2", "tau3", "tau4", "tau_is")


@dataclass
class EstimatorReport:
    tau1: np.ndarray
    tau2: np.ndarray
    tau3: np.ndarray
    tau4: np.ndarray
    tau_is: np.ndarray
    labels: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in ESTIMATOR_NAMES}
