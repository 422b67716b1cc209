"""
Monte Carlo replication harness for the variance-reduction experiments.

Every replication owns a disjoint family of random streams. Within a
replication all compared estimators see the same proposals and uniforms
(common random numbers); tau1 comes from a standard IMH replay over the
block's proposals in original order using each block's first uniform row.
"""
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from logging import Logger
from typing import Callable, Optional, Sequence

import numpy as np

from src.domain.chains import BlockImhRun, ChainState
from src.domain.estimators import ESTIMATOR_NAMES
from src.domain.experiments import ExperimentConfig, VarianceRow, VarianceTable
from src.domain.permutations import PermutationScheme
from src.domain.targets import ModelPair
from src.services.block_engine import BlockImhEngine
from src.services.estimators import estimate_all, get_test_function
from src.services.imh import replay_chain
from src.services.random_streams import RandomStreams

ModelFactory = Callable[[ExperimentConfig], ModelPair]


def standard_replay(run: BlockImhRun, streams: RandomStreams) -> tuple[np.ndarray, float]:
    """Standard IMH over all of the run's proposals in order.

    Block k consumes the uniforms of stream (k, chain 0). Returns the chain
    (b*p, d) and its acceptance rate.
    """
    state = ChainState(value=run.start.value, log_w=run.start.log_w, source_index=0)
    pieces, accepted = [], 0
    for k, block in enumerate(run.blocks):
        uniforms = streams.uniforms(k, 0).random(run.p)
        points = block.candidates[1:]
        indices, trace, end = replay_chain(state, points, block.candidate_log_ws[1:], uniforms)
        values = np.concatenate([np.asarray(state.value, dtype=float).reshape(1, -1), points])
        pieces.append(values[indices])
        accepted += int(trace.accepted.sum())
        state = ChainState(value=end.value, log_w=end.log_w, source_index=0)
    return np.concatenate(pieces), accepted / (run.p * run.b)


def variance_with_se(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column-wise unbiased variance and its standard error from the fourth central moment."""
    samples = np.asarray(samples, dtype=float)
    count = samples.shape[0]
    variance = samples.var(axis=0, ddof=1)
    centered = samples - samples.mean(axis=0)
    m4 = np.mean(centered ** 4, axis=0)
    se_sq = (m4 - (count - 3) / (count - 1) * variance ** 2) / count
    return variance, np.sqrt(np.maximum(se_sq, 0.0))


class ExperimentHarness:
    """Runs replications in parallel and reduces them into variance tables."""

    def __init__(self, logger: Logger, model_factory: ModelFactory, workers: int = 1) -> None:
        if workers < 1:
            raise ValueError("Worker count must be at least 1")
        self._logger = logger
        self._model_factory = model_factory
        self._workers = workers

    #region replication core

    def _replicate(self, model: ModelPair, cfg: ExperimentConfig, index: int) -> tuple[dict[str, np.ndarray], float]:
        streams = RandomStreams(cfg.seed).replication(index)
        x0 = model.initial_point(streams.start())
        engine = BlockImhEngine(self._logger, workers=1)
        run = engine.run(model, x0, cfg.p, cfg.b, cfg.scheme, streams, r=cfg.r)
        chain, acceptance = standard_replay(run, streams)
        report = estimate_all(
            run,
            get_test_function(cfg.h),
            burn_in_blocks=cfg.burn_in_blocks,
            normalized=cfg.normalized_densities,
            tau1_chain=chain,
        )
        return report.as_dict(), acceptance

    def _collect(self, model: ModelPair, cfg: ExperimentConfig) -> tuple[dict[str, np.ndarray], float]:
        indices = range(cfg.replications)
        if self._workers == 1:
            results = [self._replicate(model, cfg, i) for i in indices]
        else:
            with ThreadPoolExecutor(max_workers=self._workers, thread_name_prefix="replication") as pool:
                results = list(pool.map(lambda i: self._replicate(model, cfg, i), indices))
        estimates = {name: np.stack([res[0][name] for res in results]) for name in ESTIMATOR_NAMES}
        acceptance = float(np.mean([res[1] for res in results]))
        return estimates, acceptance

    def _table(
        self,
        cfg: ExperimentConfig,
        model: ModelPair,
        estimators: Sequence[str],
        scheme_label: Optional[str] = None,
    ) -> VarianceTable:
        self._logger.info(
            f"Running {cfg.replications} replications: model={cfg.model} scheme={cfg.scheme.value} "
            f"p={cfg.p} r={cfg.chains} b={cfg.b}"
        )
        estimates, acceptance = self._collect(model, cfg)
        labels = get_test_function(cfg.h).labels(model.coordinate_names)
        baseline, _ = variance_with_se(estimates["tau1"])
        table = VarianceTable(replications=cfg.replications)
        for name in estimators:
            variance, se = variance_with_se(estimates[name])
            for j, coord in enumerate(labels):
                reduction = 0.0 if baseline[j] == 0 else 100.0 * (1.0 - variance[j] / baseline[j])
                table.rows.append(VarianceRow(
                    scheme=scheme_label or cfg.scheme.value,
                    estimator=name,
                    p=cfg.p,
                    r=cfg.chains,
                    b=cfg.b,
                    coord=coord,
                    variance=float(variance[j]),
                    reduction_pct=float(reduction),
                    se_variance=float(se[j]),
                    acceptance_rate=acceptance,
                ))
        if table.low_precision:
            self._logger.warning(f"Only {cfg.replications} replications: variances are low precision")
        return table

    #endregion

    def run_replications(self, cfg: ExperimentConfig) -> VarianceTable:
        return self._table(cfg, self._model_factory(cfg), cfg.estimators)

    def permutation_sweep(
        self,
        cfg: ExperimentConfig,
        schemes: Sequence[PermutationScheme],
        p_values: Optional[Sequence[int]] = None,
    ) -> VarianceTable:
        """tau2 variance reduction for every (scheme, p) pair."""
        model = self._model_factory(cfg)
        table = VarianceTable(replications=cfg.replications)
        for p in p_values or [cfg.p]:
            for scheme in schemes:
                table.extend(self._table(replace(cfg, p=p, scheme=scheme), model, ["tau2"]))
        return table

    def estimator_sweep(self, cfg: ExperimentConfig) -> VarianceTable:
        return self._table(cfg, self._model_factory(cfg), ["tau1", "tau2", "tau3", "tau4"])

    def is_comparison(self, cfg: ExperimentConfig, b_values: Sequence[int]) -> VarianceTable:
        model = self._model_factory(cfg)
        table = VarianceTable(replications=cfg.replications)
        for b in b_values:
            table.extend(self._table(replace(cfg, b=b), model, ["tau1", "tau2", "tau3", "tau4", "tau_is"]))
        return table

    def probit_experiment(self, cfg: ExperimentConfig, c_values: Sequence[float]) -> VarianceTable:
        """Per-coordinate reductions for each proposal scale; the scheme column carries `;c=<c>`."""
        if cfg.model != "probit":
            raise ValueError("probit_experiment needs a probit configuration")
        table = VarianceTable(replications=cfg.replications)
        for c in c_values:
            scaled = replace(cfg, scale_c=c)
            label = f"{cfg.scheme.value};c={c:g}"
            table.extend(self._table(scaled, self._model_factory(scaled), ["tau1", "tau2", "tau3", "tau4"], label))
        return table
