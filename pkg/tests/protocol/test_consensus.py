import math

import numpy as np
import pytest
from pushex.errors import DomainError
from pushex.process.generators import random_regular_out_digraph
from pushex.protocol import (
    ConsensusErrorTracker,
    NetworkTopology,
    PushSumProtocol,
    run_consensus,
)

pair = NetworkTopology(2, [[1], [0]])


def test_run_consensus_target():
    """The target should be the ratio of the totals."""
    run = run_consensus(pair, [1.0, 3.0], [1.0, 1.0], 10, seed=0)
    assert run.target == 2.0
    assert run.n_steps == 10
    assert run.max_ratio_error[-1] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("drop_rate", [0.0, 0.3])
@pytest.mark.parametrize("weights", ["average", "sum"])
def test_ratios_reach_consensus(drop_rate, weights):
    """Every real node's ratio should converge to sum(x0) / sum(w0)."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    rng = np.random.default_rng(5)
    x0 = 1.0 + rng.random(5)
    w0 = np.ones(5) if weights == "average" else np.eye(5)[0]
    run = run_consensus(topology, x0, w0, 2000, seed=1, drop_rate=drop_rate)
    assert run.target == pytest.approx(x0.sum() / w0.sum())
    assert all(ratio is not None for ratio in run.final_ratios)
    for ratio in run.final_ratios:
        assert ratio == pytest.approx(run.target, abs=1e-6)


def test_sum_preset_computes_the_sum():
    """With w0 = e1 the ratios should converge to the sum of the values."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    x0 = [1.0, 2.0, 3.0, 4.0, 5.0]
    run = run_consensus(topology, x0, [1.0, 0.0, 0.0, 0.0, 0.0], 2000, seed=2)
    assert run.target == 15.0
    assert max(abs(r - 15.0) for r in run.final_ratios) < 1e-6


def test_undefined_ratios_are_none():
    """Nodes without weight should report no ratio."""
    protocol = PushSumProtocol(pair, s=0.5)
    state = protocol.initial_state([1.0, 3.0], [1.0, 0.0])
    assert protocol.ratios(state) == [1.0, None]


def test_run_consensus_invalid():
    """run_consensus should check its inputs."""
    with pytest.raises(DomainError):
        run_consensus(pair, [1.0, 3.0], [1.0, 1.0], -1, seed=0)
    with pytest.raises(DomainError):
        run_consensus(pair, [1.0, 3.0], [1.0, 1.0], 1, seed=0, drop_rate=1.5)


def test_run_consensus_deterministic():
    """Identical seeds should give identical trajectories."""
    topology = random_regular_out_digraph(5, 2, seed=0)
    first = run_consensus(topology, np.arange(5.0), np.ones(5), 50, seed=9, drop_rate=0.4)
    second = run_consensus(topology, np.arange(5.0), np.ones(5), 50, seed=9, drop_rate=0.4)
    assert first.max_ratio_error == second.max_ratio_error
    assert first.tv_distance == second.tv_distance


def test_error_tracker_matches_direct_errors():
    """The tracked log errors should match the directly computed ones early on."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    protocol = PushSumProtocol(topology)
    rng = np.random.default_rng(6)
    state = protocol.initial_state(1.0 + rng.random(5), np.ones(5))
    tracker = ConsensusErrorTracker(state.x, state.w, topology.p)
    for _ in range(20):
        outcome = protocol.sample_outcome(rng, 0.2)
        tracker.advance(protocol.as_matrix(outcome))
        state = protocol.step(state, outcome)
        w = state.w[:5]
        defined = w > 0
        direct = np.abs(state.x[:5][defined] / w[defined] - tracker.target).max()
        assert tracker.log_ratio_error() == pytest.approx(math.log(direct), rel=1e-6)
        tv = 0.5 * np.abs(state.x / state.x.sum() - state.w / state.w.sum()).sum()
        assert tracker.log_tv_distance() == pytest.approx(math.log(tv), rel=1e-6)


def test_error_tracker_resolves_tiny_errors():
    """The tracked error should keep decreasing far below machine precision."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    protocol = PushSumProtocol(topology)
    rng = np.random.default_rng(7)
    state = protocol.initial_state(1.0 + rng.random(5), np.ones(5))
    tracker = ConsensusErrorTracker(state.x, state.w, topology.p)
    for _ in range(3000):
        tracker.advance(protocol.as_matrix(protocol.sample_outcome(rng, 0.2)))
    value = tracker.log_tv_distance()
    assert math.isfinite(value)
    assert value < math.log(1e-30)


def test_error_tracker_exact_consensus():
    """An exactly reached consensus should give a log error of -inf."""
    protocol = PushSumProtocol(pair, s=0.5)
    state = protocol.initial_state([1.0, 3.0], [1.0, 1.0])
    tracker = ConsensusErrorTracker(state.x, state.w, 2)
    outcome = protocol.sample_outcome(np.random.default_rng(0), 0.0)
    tracker.advance(protocol.as_matrix(outcome))
    assert tracker.log_ratio_error() == -math.inf
    assert tracker.log_tv_distance() == -math.inf


def test_error_tracker_signed_values():
    """The TV series should be undefined for values with negative entries."""
    tracker = ConsensusErrorTracker([-1.0, 2.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], 2)
    assert not tracker.tracks_tv
    assert math.isnan(tracker.log_tv_distance())
    assert math.isfinite(tracker.log_ratio_error())
