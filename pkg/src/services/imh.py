"""
Standard (sequential) independent Metropolis-Hastings.

The chain cannot be parallelized across time: each decision depends on the
previous state. Log-weights are cached in `ChainState`, so the current point
is never re-evaluated and a run of length T costs exactly T target
evaluations plus one for the start point.
"""
from __future__ import annotations
import math
from typing import Optional

import numpy as np

from src.domain.chains import AcceptanceTrace, ChainState
from src.domain.targets import ModelPair, Point
from src.services.models import log_weight


def acceptance_prob(log_w_current: float, log_w_proposed: float) -> float:
    """min{1, w_prop / w_cur}, computed in log space."""
    return math.exp(min(0.0, log_w_proposed - log_w_current))


def imh_step(
    state: ChainState,
    proposal: tuple[Point, float, Optional[int]],
    u: float,
) -> tuple[ChainState, bool, float]:
    """One IMH transition. Accepts iff u < rho (a tie rejects)."""
    value, log_w, index = proposal
    rho = acceptance_prob(state.log_w, log_w)
    if u < rho:
        return ChainState(value=value, log_w=log_w, source_index=index), True, rho
    return state, False, rho


def replay_chain(
    start: ChainState,
    points: np.ndarray,
    log_ws: np.ndarray,
    uniforms: np.ndarray,
) -> tuple[np.ndarray, AcceptanceTrace, ChainState]:
    """Run IMH over fixed proposals and uniforms.

    Returns the candidate index held after each step (0 = start,
    k = points[k-1]), the acceptance trace and the final state.
    """
    steps = len(log_ws)
    if len(uniforms) < steps:
        raise ValueError("Need one uniform per proposal")
    indices = np.empty(steps, dtype=np.int64)
    accepted = np.zeros(steps, dtype=bool)
    rhos = np.empty(steps, dtype=float)
    state = ChainState(value=start.value, log_w=start.log_w, source_index=0)
    for t in range(steps):
        state, accepted[t], rhos[t] = imh_step(state, (points[t], float(log_ws[t]), t + 1), float(uniforms[t]))
        indices[t] = state.source_index
    return indices, AcceptanceTrace(accepted=accepted, acceptance_probs=rhos), state


def run_chain(
    model: ModelPair,
    x0: Point,
    T: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, AcceptanceTrace]:
    """Standard IMH of length T; each step draws a proposal then a uniform from `rng`."""
    if T < 1:
        raise ValueError("Chain length T must be at least 1")
    x0 = np.asarray(x0, dtype=float).reshape(model.dimension)
    state = ChainState(value=x0, log_w=log_weight(model, x0))
    states = np.empty((T, model.dimension), dtype=float)
    accepted = np.zeros(T, dtype=bool)
    rhos = np.empty(T, dtype=float)
    for t in range(T):
        y = np.asarray(model.sample_proposal(rng), dtype=float).reshape(model.dimension)
        proposal = (y, log_weight(model, y), None)
        state, accepted[t], rhos[t] = imh_step(state, proposal, rng.random())
        states[t] = state.value
    return states, AcceptanceTrace(accepted=accepted, acceptance_probs=rhos)
