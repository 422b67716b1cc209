from __future__ import annotations
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .targets import Point
from .permutations import PermutationSet


@dataclass(frozen=True)
class ChainState:
    """Current chain value with its cached log-weight.

    `source_index` is the candidate label inside a block (0 = block start,
    k = proposal y_k) and None outside a block.
    """
    value: Point
    log_w: float
    source_index: Optional[int] = None


@dataclass
class AcceptanceTrace:
    accepted: np.ndarray          # bool, one per step
    acceptance_probs: np.ndarray  # rho, one per step, in [0, 1]

    @property
    def acceptance_rate(self) -> float:
        if len(self.accepted) == 0:
            return 0.0
        return float(np.mean(self.accepted))


@dataclass(frozen=True)
class ProposalBatch:
    points: np.ndarray   # (p, d)
    log_ws: np.ndarray   # (p,)

    def __post_init__(self) -> None:
        if self.points.ndim != 2:
            raise ValueError("Proposal points must be a (p, d) array")
        if len(self.points) != len(self.log_ws):
            raise ValueError("Proposal points and log-weights must have the same length")

    @property
    def size(self) -> int:
        return len(self.log_ws)


@dataclass
class BlockResult:
    """Outcome of one r x p block.

    Candidate k = 0 is the block start, k = 1..p the block's proposals in
    original (unpermuted) order.
    """
    candidates: np.ndarray        # (p+1, d)
    candidate_log_ws: np.ndarray  # (p+1,)
    perms: PermutationSet
    n: np.ndarray                 # (p+1,) occupancy counts
    w: np.ndarray                 # (p+1,) primary Rao-Blackwell weights
    index_matrix: np.ndarray      # (r, p) candidate index per chain and step
    next_start: ChainState
    chosen_chain: int             # 1-based, in 1..r

    @property
    def p(self) -> int:
        return self.index_matrix.shape[1]

    @property
    def r(self) -> int:
        return self.index_matrix.shape[0]

    @property
    def batch(self) -> ProposalBatch:
        return ProposalBatch(points=self.candidates[1:], log_ws=self.candidate_log_ws[1:])

    @property
    def start_log_w(self) -> float:
        return float(self.candidate_log_ws[0])

    @property
    def selected_path(self) -> np.ndarray:
        """Candidate indices visited by the chain picked for the block transition."""
        return self.index_matrix[self.chosen_chain - 1]


@dataclass
class BlockImhRun:
    blocks: list[BlockResult]
    selected_chain: np.ndarray    # (b*p, d)
    start: ChainState
    p: int
    r: int
    scheme: str
    seed: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def proposals(self) -> np.ndarray:
        return np.concatenate([blk.candidates[1:] for blk in self.blocks])

    @property
    def proposal_log_ws(self) -> np.ndarray:
        return np.concatenate([blk.candidate_log_ws[1:] for blk in self.blocks])
