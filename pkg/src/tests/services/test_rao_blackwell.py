"""
Tests for the expected-occupancy recursion
"""
import itertools
import math

import numpy as np
import pytest

from src.domain.chains import ChainState, ProposalBatch
from src.services.block_engine import BlockImhEngine, simulate_block
from src.services.models import log_weights
from src.services.permutations import random_perms, same_order
from src.services.rao_blackwell import block_occupancy, occupancy_one_chain, pairwise_rho


def enumerate_occupancy(chain_log_ws):
    """Expected per-chain occupancy by summing over all 2^p accept/reject paths"""
    p = len(chain_log_ws) - 1
    expected = np.zeros(p + 1)
    for pattern in itertools.product((False, True), repeat=p):
        state, prob = 0, 1.0
        counts = np.zeros(p + 1)
        for t, accept in enumerate(pattern, start=1):
            rho = math.exp(min(0.0, chain_log_ws[t] - chain_log_ws[state]))
            if accept:
                prob *= rho
                state = t
            else:
                prob *= 1.0 - rho
            counts[state] += 1
        expected += prob * counts
    return expected


class TestPairwiseRho:

    def test_example(self):
        rho = pairwise_rho(np.log([1.0, 2.0, 1.0]))
        assert rho[0, 1] == 1.0
        assert rho[0, 2] == 1.0
        assert rho[1, 2] == pytest.approx(0.5)
        assert np.all(np.tril(rho) == 0)

    def test_equal_weights(self):
        rho = pairwise_rho(np.zeros(5))
        np.testing.assert_array_equal(rho[np.triu_indices(5, k=1)], 1.0)

    def test_scale_invariant(self):
        lw = np.array([0.3, -1.2, 2.0, 0.0])
        np.testing.assert_allclose(pairwise_rho(lw), pairwise_rho(lw + 17.5))


class TestOccupancyOneChain:

    def test_one_step(self):
        lw = np.array([0.0, -math.log(5.0)])
        phi = occupancy_one_chain(pairwise_rho(lw), 1)
        np.testing.assert_allclose(phi, [0.8, 0.2])

    def test_two_step_example(self):
        phi = occupancy_one_chain(pairwise_rho(np.log([1.0, 2.0, 1.0])), 2)
        np.testing.assert_allclose(phi, [0.0, 1.5, 0.5], atol=1e-15)

    def test_increasing_weights_visit_every_proposal_once(self):
        phi = occupancy_one_chain(pairwise_rho(np.arange(8, dtype=float)), 7)
        np.testing.assert_allclose(phi, [0.0] + [1.0] * 7)

    def test_matches_path_enumeration(self):
        rng = np.random.default_rng(20)
        for _ in range(200):
            p = int(rng.integers(1, 11))
            lw = rng.normal(scale=1.5, size=p + 1)
            phi = occupancy_one_chain(pairwise_rho(lw), p)
            np.testing.assert_allclose(phi, enumerate_occupancy(lw), rtol=0, atol=1e-12)
            assert phi.sum() == pytest.approx(p, abs=1e-10)

    def test_wrong_shape(self):
        with pytest.raises(ValueError):
            occupancy_one_chain(np.zeros((3, 3)), 3)


class TestBlockOccupancy:

    @pytest.fixture
    def batch(self):
        rng = np.random.default_rng(6)
        return ProposalBatch(points=rng.normal(size=(6, 1)), log_ws=rng.normal(size=6))

    def test_identity_reduces_to_one_chain(self, batch):
        occ = block_occupancy(batch, 0.1, same_order(6, 1))
        lw = np.concatenate([[0.1], batch.log_ws])
        np.testing.assert_allclose(occ.phi, occupancy_one_chain(pairwise_rho(lw), 6))

    def test_permuted_chains_match_enumeration(self, batch):
        perms = random_perms(6, 5, np.random.default_rng(1))
        occ = block_occupancy(batch, -0.4, perms)
        lw = np.concatenate([[-0.4], batch.log_ws])
        for k, order in enumerate(perms.perms):
            labels = np.concatenate([[0], order])
            np.testing.assert_allclose(occ.phi_per_chain[k][labels], enumerate_occupancy(lw[labels]), atol=1e-12)
        assert occ.phi.sum() == pytest.approx(5 * 6)

    def test_tables(self, batch):
        occ = block_occupancy(batch, 0.0, random_perms(6, 3, np.random.default_rng(2)))
        for delta, xi in zip(occ.deltas, occ.xis):
            assert delta[0] == 1.0
            np.testing.assert_array_equal(np.diag(xi), 1.0)
            assert np.all(occ.phi_per_chain >= 0)

    def test_tables_dropped_on_request(self, batch):
        occ = block_occupancy(batch, 0.0, same_order(6, 2), keep_tables=False)
        assert occ.deltas == [] and occ.xis == []

    def test_parallel_mapper_identical(self, batch, logger):
        perms = random_perms(6, 6, np.random.default_rng(3))
        with BlockImhEngine(logger, workers=3) as engine:
            parallel = block_occupancy(batch, 0.2, perms, mapper=engine.map)
        np.testing.assert_array_equal(parallel.phi, block_occupancy(batch, 0.2, perms).phi)


class TestConditionalExpectationBridge:
    """Averaging n and w over fresh uniforms recovers phi"""

    def test_replay_average_matches_phi(self, toy):
        rng = np.random.default_rng(404)
        p = r = 16
        points = toy.sample_proposals(rng, p)
        batch = ProposalBatch(points=points, log_ws=log_weights(toy, points))
        start = ChainState(value=np.array([0.3]), log_w=float(log_weights(toy, np.array([[0.3]]))[0]))
        perms = random_perms(p, r, rng)
        phi = block_occupancy(batch, start.log_w, perms).phi

        replays = 10_000
        ns = np.empty((replays, p + 1))
        ws = np.empty((replays, p + 1))
        for m in range(replays):
            result = simulate_block(start, batch, perms, rng.random((r, p)), rng)
            ns[m], ws[m] = result.n, result.w

        for samples in (ns, ws):
            mean = samples.mean(axis=0)
            se = samples.std(axis=0, ddof=1) / math.sqrt(replays)
            assert np.all(np.abs(mean - phi) <= 4 * se + 1e-9)
