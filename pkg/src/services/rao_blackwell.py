"""
Expected within-block occupancies with the uniforms integrated out.

For one chain visiting y_0 (start), y_1, ..., y_p in chain order:

    rho_tu  = min(1, w_u / w_t)                       t < u
    xi_tj   = prod_{u=t+1..j} (1 - rho_tu),  xi_tt = 1
    delta_0 = 1,  delta_t = sum_{j<t} delta_j xi_{j,t-1} rho_jt
    phi_t   = delta_t * sum_{j=t..p} xi_tj             t >= 1
    phi_0   = sum_{j=1..p} xi_0j

phi_0 leaves out the start's time-0 slot, so sum(phi) = p per chain, the
same mass as the occupancy counts of the p post-start states.
"""
from __future__ import annotations
from typing import Callable, Iterable, Optional

import numpy as np

from src.domain.chains import ProposalBatch
from src.domain.occupancy import RbOccupancy
from src.domain.permutations import PermutationSet

_FLUSH = 1e-300


def pairwise_rho(log_ws: np.ndarray) -> np.ndarray:
    """Upper-triangular (p+1, p+1) matrix of rho_tu; zero on and below the diagonal."""
    lw = np.asarray(log_ws, dtype=float)
    rho = np.exp(np.minimum(0.0, lw[None, :] - lw[:, None]))
    return np.triu(rho, k=1)


def _xi_table(rho: np.ndarray) -> np.ndarray:
    # entries on and below the diagonal of 1 - rho are 1, so a row-wise
    # cumulative product starts accumulating right after column t
    xi = np.triu(np.cumprod(1.0 - rho, axis=1))
    xi[xi < _FLUSH] = 0.0
    return xi


def _occupancy_tables(rho: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if rho.shape != (p + 1, p + 1):
        raise ValueError(f"rho must be ({p + 1}, {p + 1}), got {rho.shape}")
    xi = _xi_table(rho)
    delta = np.zeros(p + 1, dtype=float)
    delta[0] = 1.0
    for t in range(1, p + 1):
        delta[t] = np.dot(delta[:t] * xi[:t, t - 1], rho[:t, t])
    delta[delta < _FLUSH] = 0.0

    phi = delta * xi.sum(axis=1)
    phi[0] = xi[0, 1:].sum()
    return phi, delta, xi


def occupancy_one_chain(rho: np.ndarray, p: int) -> np.ndarray:
    """phi in chain order (index 0 = start)."""
    phi, _, _ = _occupancy_tables(rho, p)
    return phi


def block_occupancy(
    batch: ProposalBatch,
    start_log_w: float,
    perms: PermutationSet,
    mapper: Optional[Callable[[Callable, Iterable], list]] = None,
    keep_tables: bool = True,
) -> RbOccupancy:
    """phi per chain, mapped back to original candidate labels, and their sum.

    `mapper` is an order-preserving map (e.g. `BlockImhEngine.map`) used to
    spread the per-chain O(p^2) work over workers. With `keep_tables=False`
    the delta/xi tables are dropped once each chain's phi is known.
    """
    p = batch.size
    if perms.p != p:
        raise ValueError(f"Permutation length {perms.p} does not match block size {p}")
    lw = np.concatenate([[start_log_w], batch.log_ws])

    def one_chain(order: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        chain_labels = np.concatenate([[0], order])
        phi_chain, delta, xi = _occupancy_tables(pairwise_rho(lw[chain_labels]), p)
        phi = np.zeros(p + 1, dtype=float)
        phi[chain_labels] = phi_chain
        if not keep_tables:
            return phi, None, None
        return phi, delta, xi

    rows = list(perms.perms)
    results = mapper(one_chain, rows) if mapper is not None else [one_chain(row) for row in rows]
    phi_per_chain = np.stack([res[0] for res in results])
    return RbOccupancy(
        phi_per_chain=phi_per_chain,
        phi=phi_per_chain.sum(axis=0),
        deltas=[res[1] for res in results] if keep_tables else [],
        xis=[res[2] for res in results] if keep_tables else [],
    )
