from __future__ import annotations
from dataclasses import dataclass
from enum import Enum

import numpy as np


class PermutationScheme(Enum):
    SAME_ORDER = "same"
    CIRCULAR = "circular"
    RANDOM = "random"
    HALF_RANDOM_HALF_REVERSED = "half-reversed"
    STRATIFIED = "stratified"

    @classmethod
    def from_name(cls, name: str) -> PermutationScheme:
        for scheme in cls:
            if scheme.value == name or scheme.name.lower() == name.lower():
                return scheme
        raise ValueError(f"Unknown permutation scheme: {name}")

    @property
    def uses_rng(self) -> bool:
        return self not in (PermutationScheme.SAME_ORDER, PermutationScheme.CIRCULAR)


@dataclass(frozen=True)
class PermutationSet:
    perms: np.ndarray          # (r, p) int, each row a permutation of 1..p
    scheme: PermutationScheme

    @property
    def r(self) -> int:
        return self.perms.shape[0]

    @property
    def p(self) -> int:
        return self.perms.shape[1]

    def zero_based(self) -> np.ndarray:
        return self.perms - 1

    def is_valid(self) -> bool:
        expected = np.arange(1, self.p + 1)
        return bool(np.all(np.sort(self.perms, axis=1) == expected))
