from __future__ import annotations
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ProbitData:
    X: np.ndarray                 # (n, d) design matrix
    y: np.ndarray                 # (n,) values in {0, 1}
    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def gram(self) -> np.ndarray:
        return self.X.T @ self.X


@dataclass(frozen=True)
class MleFit:
    theta_hat: np.ndarray         # (d,)
    sigma_hat: np.ndarray         # (d, d), inverse observed information
    iterations: int
    grad_norm: float
