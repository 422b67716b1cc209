"""
Tests for block IMH
"""
import math

import numpy as np
import pytest

from src.domain.chains import ChainState, ProposalBatch
from src.domain.permutations import PermutationScheme
from src.services.block_engine import BlockImhEngine, run_block_imh, selected_acceptance_rate, simulate_block
from src.services.imh import replay_chain, run_chain
from src.services.models import CountingModelPair, log_weight
from src.services.permutations import random_perms, same_order
from src.services.random_streams import RandomStreams


def _valid_paths(block):
    """Each row only ever moves to the label proposed at that step"""
    for k, row in enumerate(block.index_matrix):
        previous = 0
        for t, label in enumerate(row):
            assert label == previous or label == block.perms.perms[k, t]
            previous = label


class TestSimulateBlock:
    """Test a single p x p block"""

    @pytest.fixture
    def start(self):
        return ChainState(value=np.array([0.0]), log_w=0.0, source_index=0)

    def test_degenerate_block_is_one_imh_step(self, start):
        batch = ProposalBatch(points=np.array([[2.0]]), log_ws=np.array([-math.log(4.0)]))
        rho = 0.25
        for u, accepted in [(0.1, 1), (0.9, 0)]:
            result = simulate_block(start, batch, same_order(1, 1), np.array([[u]]), np.random.default_rng(0))
            np.testing.assert_array_equal(result.n, [1 - accepted, accepted])
            np.testing.assert_allclose(result.w, [1 - rho, rho])
            assert result.chosen_chain == 1

    def test_conservation_and_histogram(self, start):
        rng = np.random.default_rng(12)
        p, r = 8, 6
        batch = ProposalBatch(points=rng.normal(size=(p, 1)), log_ws=rng.normal(size=p))
        perms = random_perms(p, r, rng)
        result = simulate_block(start, batch, perms, rng.random((r, p)), rng)
        assert result.n.sum() == r * p
        assert result.w.sum() == pytest.approx(r * p)
        assert np.all(result.w >= 0)
        np.testing.assert_array_equal(result.n, np.bincount(result.index_matrix.ravel(), minlength=p + 1))
        _valid_paths(result)

    def test_next_start_is_chosen_endpoint(self, start):
        rng = np.random.default_rng(3)
        batch = ProposalBatch(points=rng.normal(size=(5, 1)), log_ws=rng.normal(size=5))
        result = simulate_block(start, batch, random_perms(5, 5, rng), rng.random((5, 5)), rng)
        end = result.index_matrix[result.chosen_chain - 1, -1]
        np.testing.assert_array_equal(result.next_start.value, result.candidates[end])
        assert result.next_start.log_w == result.candidate_log_ws[end]
        assert 1 <= result.chosen_chain <= 5

    def test_two_step_average_occupancy(self, start):
        batch = ProposalBatch(points=np.array([[1.0], [-1.0]]), log_ws=np.array([math.log(2.0), 0.0]))
        perms = same_order(2, 1)
        rng = np.random.default_rng(77)
        counts = np.stack([
            simulate_block(start, batch, perms, rng.random((1, 2)), rng).n for _ in range(10_000)
        ])
        np.testing.assert_allclose(counts.mean(axis=0), [0.0, 1.5, 0.5], atol=0.03)

    def test_mismatched_sizes(self, start):
        batch = ProposalBatch(points=np.zeros((3, 1)), log_ws=np.zeros(3))
        with pytest.raises(ValueError):
            simulate_block(start, batch, same_order(4, 4), np.zeros((4, 4)), np.random.default_rng(0))


class TestRunBlockImh:
    """Test chained blocks"""

    def test_single_block_conservation(self, toy):
        run = run_block_imh(toy, np.array([0.0]), p=16, b=1, scheme=PermutationScheme.RANDOM, seed=5)
        assert len(run.blocks) == 1
        assert run.blocks[0].n.sum() == 256
        assert run.selected_chain.shape == (16, 1)

    def test_blocks_chain_through_next_start(self, toy):
        run = run_block_imh(toy, np.array([0.0]), p=4, b=5, scheme=PermutationScheme.STRATIFIED, seed=8)
        for before, after in zip(run.blocks, run.blocks[1:]):
            np.testing.assert_array_equal(after.candidates[0], before.next_start.value)
            assert after.candidate_log_ws[0] == before.next_start.log_w

    def test_same_order_single_chain_replays_standard_imh(self, toy):
        seed, p, b = 31, 8, 6
        run = run_block_imh(toy, np.array([0.4]), p=p, b=b, scheme=PermutationScheme.SAME_ORDER, seed=seed, r=1)
        streams = RandomStreams(seed)
        state = run.start
        for k, block in enumerate(run.blocks):
            uniforms = streams.uniforms(k, 0).random(p)
            points = block.candidates[1:]
            values = np.vstack([state.value, points])
            indices, _, state = replay_chain(state, points, block.candidate_log_ws[1:], uniforms)
            np.testing.assert_array_equal(indices, block.index_matrix[0])
            np.testing.assert_array_equal(values[indices], run.selected_chain[k * p:(k + 1) * p])

    def test_selected_chain_acceptance_rate(self, toy):
        run = run_block_imh(toy, np.array([0.0]), p=16, b=2_000, scheme=PermutationScheme.RANDOM, seed=2010)
        assert 0.67 <= selected_acceptance_rate(run) <= 0.73

    def test_selected_chain_is_marginally_valid(self, toy):
        run = run_block_imh(toy, np.array([0.0]), p=16, b=2_000, scheme=PermutationScheme.CIRCULAR, seed=99)
        assert abs(run.selected_chain.mean()) < 0.06
        assert run.selected_chain.var() == pytest.approx(1.0, abs=0.08)

    @pytest.mark.parametrize("scheme", list(PermutationScheme))
    def test_identical_across_worker_counts(self, toy, scheme):
        runs = [run_block_imh(toy, np.array([0.0]), p=8, b=4, scheme=scheme, seed=13, workers=w) for w in (1, 4)]
        for a, b in zip(runs[0].blocks, runs[1].blocks):
            np.testing.assert_array_equal(a.index_matrix, b.index_matrix)
            np.testing.assert_array_equal(a.w, b.w)
            np.testing.assert_array_equal(a.candidate_log_ws, b.candidate_log_ws)
        np.testing.assert_array_equal(runs[0].selected_chain, runs[1].selected_chain)

    def test_rectangular_blocks(self, toy):
        run = run_block_imh(toy, np.array([0.0]), p=6, b=3, scheme=PermutationScheme.RANDOM, seed=1, r=10)
        for block in run.blocks:
            assert block.index_matrix.shape == (10, 6)
            assert block.n.sum() == 60
            assert 1 <= block.chosen_chain <= 10

    def test_invalid_arguments(self, toy, logger):
        engine = BlockImhEngine(logger)
        with pytest.raises(ValueError):
            engine.run(toy, np.array([0.0]), 0, 1, PermutationScheme.RANDOM, RandomStreams(0))
        with pytest.raises(ValueError):
            engine.run(toy, np.array([0.0]), 4, 0, PermutationScheme.RANDOM, RandomStreams(0))
        with pytest.raises(ValueError):
            BlockImhEngine(logger, workers=0)


class TestCostParity:
    """Block IMH costs the same number of target evaluations as standard IMH"""

    def test_evaluation_counts_match(self, toy, logger):
        p, b = 16, 12
        counted = CountingModelPair(toy)
        with BlockImhEngine(logger, workers=3) as engine:
            engine.run(counted, np.array([0.0]), p, b, PermutationScheme.RANDOM, RandomStreams(4))
        block_count = counted.target_evaluations
        counted.reset()
        run_chain(counted, np.array([0.0]), p * b, np.random.default_rng(4))
        assert block_count == p * b + 1
        assert counted.target_evaluations == block_count

    def test_start_weight_cached(self, toy):
        run = run_block_imh(toy, np.array([1.0]), p=2, b=1, scheme=PermutationScheme.SAME_ORDER, seed=0)
        assert run.start.log_w == log_weight(toy, np.array([1.0]))
