"""
Named, reproducible random substreams.

Every stream is a fresh `np.random.Generator` seeded from
`SeedSequence(root_seed, spawn_key=(replication..., purpose, indices...))`,
so a stream depends only on its name and never on the order in which
workers ask for it.
"""
from __future__ import annotations
from enum import IntEnum

import numpy as np


class StreamPurpose(IntEnum):
    START = 0
    PROPOSALS = 1
    UNIFORMS = 2
    PERMUTATIONS = 3
    TRANSITION = 4


class RandomStreams:
    def __init__(self, seed: int, prefix: tuple[int, ...] = ()):
        if seed < 0:
            raise ValueError("Seed must be non-negative")
        self.seed = int(seed)
        self.prefix = tuple(prefix)

    def _generator(self, purpose: StreamPurpose, *indices: int) -> np.random.Generator:
        key = self.prefix + (int(purpose),) + tuple(int(i) for i in indices)
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=key))

    def replication(self, index: int) -> RandomStreams:
        """Disjoint family of streams for replication `index`."""
        return RandomStreams(self.seed, self.prefix + (1000 + int(index),))

    def start(self) -> np.random.Generator:
        return self._generator(StreamPurpose.START)

    def proposals(self, block: int) -> np.random.Generator:
        return self._generator(StreamPurpose.PROPOSALS, block)

    def uniforms(self, block: int, chain: int) -> np.random.Generator:
        return self._generator(StreamPurpose.UNIFORMS, block, chain)

    def uniform_rows(self, block: int, r: int, p: int) -> np.ndarray:
        """(r, p) uniforms on [0, 1); row k comes from the (block, k) stream."""
        return np.stack([self.uniforms(block, k).random(p) for k in range(r)])

    def permutations(self, block: int) -> np.random.Generator:
        return self._generator(StreamPurpose.PERMUTATIONS, block)

    def transition(self, block: int) -> np.random.Generator:
        return self._generator(StreamPurpose.TRANSITION, block)
