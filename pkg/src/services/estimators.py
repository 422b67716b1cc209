"""
Estimators of E_pi[h] from block IMH output.

    tau1   plain mean over the selected chain
    tau2   occupancy counts n_k        (block average over all r chains)
    tau3   primary Rao-Blackwell weights w_k
    tau4   expected occupancies phi_k  (no uniforms involved)
    tau_is importance sampling over the same proposals

tau2..tau4 weight h at the p+1 candidates of each block; blocks are combined
with equal weight (total mass b*r*p). h is evaluated once per candidate.
"""
from __future__ import annotations
from typing import Optional, Sequence

import numpy as np

from src.domain.chains import BlockImhRun, BlockResult
from src.domain.estimators import EstimatorReport, TestFunction
from src.domain.occupancy import RbOccupancy
from src.services.rao_blackwell import block_occupancy


#region test functions

def _identity(points: np.ndarray) -> np.ndarray:
    return points


def _second_moment(points: np.ndarray) -> np.ndarray:
    return points ** 2


TEST_FUNCTIONS: dict[str, TestFunction] = {
    "identity": TestFunction(name="identity", fn=_identity),
    "second-moment": TestFunction(name="second-moment", fn=_second_moment, label=lambda c: f"{c}^2"),
}


def get_test_function(name: str) -> TestFunction:
    try:
        return TEST_FUNCTIONS[name]
    except KeyError:
        raise ValueError(f"Unknown test function '{name}'; choose from {sorted(TEST_FUNCTIONS)}") from None


def register_test_function(h: TestFunction) -> None:
    TEST_FUNCTIONS[h.name] = h

#endregion


def candidate_values(blocks: Sequence[BlockResult], h: TestFunction) -> list[np.ndarray]:
    """h at y_0..y_p for every block, shape (p+1, k) each."""
    return [h(block.candidates) for block in blocks]


def _pairwise_sum(parts: list[np.ndarray]) -> np.ndarray:
    # fixed reduction tree, independent of how the parts were produced
    while len(parts) > 1:
        paired = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            paired.append(parts[-1])
        parts = paired
    return parts[0]


def _weighted(weights: Sequence[np.ndarray], candidates_h: Sequence[np.ndarray], mass: float) -> np.ndarray:
    if len(weights) == 0:
        raise ValueError("Need at least one block")
    if len(weights) != len(candidates_h):
        raise ValueError("Weights and candidate values must cover the same blocks")
    parts = [np.asarray(wk, dtype=float) @ hk for wk, hk in zip(weights, candidates_h)]
    return _pairwise_sum(parts) / mass


def _mass(blocks: Sequence[BlockResult]) -> float:
    return float(sum(block.r * block.p for block in blocks))


def tau1(selected_chain: np.ndarray, h: TestFunction) -> np.ndarray:
    if len(selected_chain) == 0:
        raise ValueError("tau1 needs a non-empty chain")
    return h(selected_chain).mean(axis=0)


def tau2(blocks: Sequence[BlockResult], candidates_h: Sequence[np.ndarray]) -> np.ndarray:
    return _weighted([block.n for block in blocks], candidates_h, _mass(blocks))


def tau2_from_paths(blocks: Sequence[BlockResult], candidates_h: Sequence[np.ndarray]) -> np.ndarray:
    """tau2 summed chain by chain over the index matrices instead of the histogram."""
    parts = [hk[block.index_matrix].sum(axis=(0, 1)) for block, hk in zip(blocks, candidates_h)]
    return _pairwise_sum(parts) / _mass(blocks)


def tau3(blocks: Sequence[BlockResult], candidates_h: Sequence[np.ndarray]) -> np.ndarray:
    return _weighted([block.w for block in blocks], candidates_h, _mass(blocks))


def tau4(
    blocks: Sequence[BlockResult],
    rb: Sequence[RbOccupancy],
    candidates_h: Sequence[np.ndarray],
) -> np.ndarray:
    if len(rb) != len(blocks):
        raise ValueError("Need one occupancy result per block")
    return _weighted([occ.phi for occ in rb], candidates_h, _mass(blocks))


def tau_is(
    points: np.ndarray,
    log_ws: np.ndarray,
    h: TestFunction,
    normalized: bool = False,
) -> np.ndarray:
    """Self-normalized by default; `normalized=True` trusts the densities'
    constants and returns (1/T) sum h(y_t) w_t."""
    log_ws = np.asarray(log_ws, dtype=float)
    if len(log_ws) == 0:
        raise ValueError("tau_is needs at least one proposal")
    values = h(points)
    if normalized:
        return (values * np.exp(log_ws)[:, None]).mean(axis=0)
    scaled = np.exp(log_ws - log_ws.max())
    return scaled @ values / scaled.sum()


def rb_occupancies(blocks: Sequence[BlockResult], mapper=None) -> list[RbOccupancy]:
    return [block_occupancy(block.batch, block.start_log_w, block.perms, mapper=mapper, keep_tables=False)
            for block in blocks]


def estimate_all(
    run: BlockImhRun,
    h: TestFunction,
    burn_in_blocks: int = 0,
    normalized: bool = False,
    rb: Optional[Sequence[RbOccupancy]] = None,
    tau1_chain: Optional[np.ndarray] = None,
    labels: Optional[list[str]] = None,
) -> EstimatorReport:
    """All five estimators from one run, after dropping `burn_in_blocks` leading blocks.

    `tau1_chain` overrides the selected chain (the harness passes a standard
    IMH replay over the same proposals).
    """
    if not 0 <= burn_in_blocks < run.b:
        raise ValueError(f"Burn-in of {burn_in_blocks} blocks leaves nothing of {run.b} blocks")
    blocks = run.blocks[burn_in_blocks:]
    skip = burn_in_blocks * run.p
    chain = run.selected_chain if tau1_chain is None else tau1_chain
    if rb is None:
        rb = rb_occupancies(blocks)
    else:
        rb = list(rb)[burn_in_blocks:]
    cand_h = candidate_values(blocks, h)
    return EstimatorReport(
        tau1=tau1(chain[skip:], h),
        tau2=tau2(blocks, cand_h),
        tau3=tau3(blocks, cand_h),
        tau4=tau4(blocks, rb, cand_h),
        tau_is=tau_is(run.proposals[skip:], run.proposal_log_ws[skip:], h, normalized=normalized),
        labels=labels or [],
        meta={"p": run.p, "b": run.b, "r": run.r, "scheme": run.scheme, "seed": run.seed,
              "burn_in_blocks": burn_in_blocks},
    )
