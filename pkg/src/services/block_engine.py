"""
Block independent Metropolis-Hastings.

Each block draws p proposals (evaluated in parallel), replays them through r
chains that share the block's start and visit the proposals in different
orders, and hands one uniformly chosen chain's endpoint to the next block.
Chain states are candidate labels into {y_0 = start, y_1..y_p}.
"""
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from logging import Logger
from typing import Callable, Iterable, Optional, TypeVar

import numpy as np

from src.domain.chains import BlockImhRun, BlockResult, ChainState, ProposalBatch
from src.domain.permutations import PermutationScheme, PermutationSet
from src.domain.targets import ModelPair, Point
from src.services.models import log_weight, log_weights
from src.services.permutations import generate_permutations
from src.services.random_streams import RandomStreams

T = TypeVar("T")
R = TypeVar("R")


def simulate_block(
    start: ChainState,
    batch: ProposalBatch,
    perms: PermutationSet,
    uniforms: np.ndarray,
    transition_rng: np.random.Generator,
) -> BlockResult:
    """Replay one block.

    Chain k proposes y_{sigma_k(1)}, ..., y_{sigma_k(p)} using uniforms[k].
    Per step, with j the current label and i the proposed one:
    w_j += 1 - rho, w_i += rho.
    """
    p = batch.size
    r = perms.r
    if perms.p != p:
        raise ValueError(f"Permutation length {perms.p} does not match block size {p}")
    uniforms = np.asarray(uniforms, dtype=float)
    if uniforms.shape != (r, p):
        raise ValueError(f"Expected uniforms of shape {(r, p)}, got {uniforms.shape}")

    lw = np.concatenate([[start.log_w], batch.log_ws])
    order = perms.perms
    current = np.zeros(r, dtype=np.int64)
    index_matrix = np.empty((r, p), dtype=np.int64)
    w = np.zeros(p + 1, dtype=float)
    for t in range(p):
        proposed = order[:, t]
        rho = np.exp(np.minimum(0.0, lw[proposed] - lw[current]))
        np.add.at(w, current, 1.0 - rho)
        np.add.at(w, proposed, rho)
        current = np.where(uniforms[:, t] < rho, proposed, current)
        index_matrix[:, t] = current

    n = np.bincount(index_matrix.ravel(), minlength=p + 1)
    candidates = np.concatenate([np.asarray(start.value, dtype=float).reshape(1, -1), batch.points])
    chosen = int(transition_rng.integers(r))
    end = int(index_matrix[chosen, -1])
    next_start = ChainState(value=candidates[end], log_w=float(lw[end]), source_index=0)
    return BlockResult(
        candidates=candidates,
        candidate_log_ws=lw,
        perms=perms,
        n=n,
        w=w,
        index_matrix=index_matrix,
        next_start=next_start,
        chosen_chain=chosen + 1,
    )


class BlockImhEngine:
    """Runs block IMH with a configurable number of evaluation workers.

    Results do not depend on `workers`: proposals come from per-block streams,
    uniforms from per-(block, chain) streams, and parallel evaluation keeps
    input order.
    """

    def __init__(self, logger: Logger, workers: int = 1) -> None:
        if workers < 1:
            raise ValueError("Worker count must be at least 1")
        self._logger = logger
        self._workers = workers
        self._pool: Optional[ThreadPoolExecutor] = None

    @property
    def workers(self) -> int:
        return self._workers

    def __enter__(self) -> BlockImhEngine:
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Order-preserving map over the worker pool (inline when workers == 1)."""
        if self._workers == 1:
            return [fn(item) for item in items]
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self._workers, thread_name_prefix="imh")
        return list(self._pool.map(fn, items))

    def propose(self, model: ModelPair, rng: np.random.Generator, p: int) -> ProposalBatch:
        """Draw p proposals and evaluate their log-weights, chunked across workers."""
        points = np.asarray(model.sample_proposals(rng, p), dtype=float).reshape(p, model.dimension)
        chunks = np.array_split(np.arange(p), min(self._workers, p))
        parts = self.map(lambda idx: log_weights(model, points[idx]), chunks)
        return ProposalBatch(points=points, log_ws=np.concatenate(parts))

    def permutations_for(
        self, scheme: PermutationScheme, p: int, r: int, streams: RandomStreams, block: int
    ) -> PermutationSet:
        rng = streams.permutations(block) if scheme.uses_rng else None
        return generate_permutations(scheme, p, r, rng)

    def run(
        self,
        model: ModelPair,
        x0: Point,
        p: int,
        b: int,
        scheme: PermutationScheme,
        streams: RandomStreams,
        r: Optional[int] = None,
    ) -> BlockImhRun:
        if p < 1:
            raise ValueError("Block size p must be at least 1")
        if b < 1:
            raise ValueError("Number of blocks b must be at least 1")
        r = p if r is None else r
        if r < 1:
            raise ValueError("Number of chains r must be at least 1")

        x0 = np.asarray(x0, dtype=float).reshape(model.dimension)
        start = ChainState(value=x0, log_w=log_weight(model, x0), source_index=0)
        state = start
        blocks: list[BlockResult] = []
        selected = np.empty((b * p, model.dimension), dtype=float)
        for block in range(b):
            batch = self.propose(model, streams.proposals(block), p)
            perms = self.permutations_for(scheme, p, r, streams, block)
            uniforms = streams.uniform_rows(block, r, p)
            result = simulate_block(state, batch, perms, uniforms, streams.transition(block))
            selected[block * p:(block + 1) * p] = result.candidates[result.selected_path]
            blocks.append(result)
            state = result.next_start
            self._logger.debug(f"Block {block + 1}/{b}: chain {result.chosen_chain} selected, n={result.n.tolist()}")

        return BlockImhRun(
            blocks=blocks,
            selected_chain=selected,
            start=start,
            p=p,
            r=r,
            scheme=scheme.value,
            seed=streams.seed,
        )


def run_block_imh(
    model: ModelPair,
    x0: Point,
    p: int,
    b: int,
    scheme: PermutationScheme,
    seed: int,
    r: Optional[int] = None,
    workers: int = 1,
    logger: Optional[Logger] = None,
) -> BlockImhRun:
    """Convenience wrapper: one engine, streams rooted at `seed`."""
    if logger is None:
        from src.config.logging_config import logger as default_logger
        logger = default_logger
    with BlockImhEngine(logger, workers=workers) as engine:
        return engine.run(model, x0, p, b, scheme, RandomStreams(seed), r=r)


def selected_acceptance_rate(run: BlockImhRun) -> float:
    """Fraction of accepted moves along the selected chain.

    Proposal labels are distinct and non-zero, so a move was accepted exactly
    when the candidate label changes.
    """
    accepted = 0
    for block in run.blocks:
        path = np.concatenate([[0], block.selected_path])
        accepted += int(np.count_nonzero(np.diff(path)))
    return accepted / (run.p * run.b)
