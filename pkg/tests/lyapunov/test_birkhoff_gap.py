import math

import numpy as np
import pytest
from pushex.cones import NonNegMatrix, tau
from pushex.errors import NotPrimitiveError
from pushex.lyapunov import (
    BirkhoffGapEstimator,
    BirkhoffTracker,
    birkhoff_gap_estimate,
    estimate_top2,
    mean_log_tau,
)
from pushex.process import GossipProcess, ProcessConfig, UniformPositiveProcess
from pushex.process.generators import bidirectional_pair, random_regular_out_digraph


def test_constant_pair():
    """The gap of the symmetric pair matrix is log 2."""
    gap = birkhoff_gap_estimate([[0.75, 0.25], [0.25, 0.75]], 1000, seed=0)
    assert gap == pytest.approx(math.log(2.0), abs=1e-6)


def test_constant_three_by_three():
    """The gap of a constant matrix is the log of its eigenvalue ratio."""
    A = [[0.5, 0.3, 0.2], [0.3, 0.5, 0.2], [0.2, 0.2, 0.6]]
    gap = birkhoff_gap_estimate(A, 2000, seed=0)
    assert gap == pytest.approx(math.log(1 / 0.4), abs=1e-3)


def test_identity_is_not_primitive():
    """The identity never contracts."""
    with pytest.raises(NotPrimitiveError):
        birkhoff_gap_estimate(np.eye(3), 500, seed=0)


def test_tracker_matches_direct_tau():
    """While tau is resolvable directly, the tracker should agree with it."""
    process = UniformPositiveProcess(3)
    rng = np.random.default_rng(0)
    tracker = BirkhoffTracker(3)
    for _ in range(4):
        tracker.update(process.sample(rng))
        direct = tau(NonNegMatrix(tracker.product.numeric))
        assert tracker.log_tau() == pytest.approx(math.log(direct), rel=1e-6)


def test_tracker_mixed_rows():
    """A product with a mixed row has tau = 1."""
    tracker = BirkhoffTracker(2)
    tracker.update(NonNegMatrix([[1.0, 0.0], [1.0, 1.0]]))
    assert tracker.log_tau() == 0.0


def test_first_contracting_step():
    """The lossless pair lift first contracts at step 2."""
    process = GossipProcess(ProcessConfig(bidirectional_pair(), drop_rate=0.0))
    estimator = BirkhoffGapEstimator(4, 100, sample_points=100)
    for matrix, columns in process.stream_with_columns(seed=0, n_steps=100):
        estimator.update(matrix, columns)
    estimate = estimator.estimate()
    assert estimate.first_contracting_step == 2
    assert estimate.gap == math.inf


def test_gossip_agrees_with_qr():
    """Both gap estimators should agree on a lossy gossip process."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    process = GossipProcess(ProcessConfig(topology, drop_rate=0.2))
    qr = estimate_top2(process, 20_000, seed=1)
    gap = birkhoff_gap_estimate(process, 20_000, seed=1)
    assert gap == pytest.approx(qr.gap, rel=0.1)


def test_mean_log_tau_constant():
    """A constant positive process gives log tau exactly."""
    result = mean_log_tau([[2.0, 1.0], [1.0, 2.0]], 20, seed=0)
    assert result.mean == pytest.approx(math.log(1 / 3), abs=1e-12)
    assert result.standard_error == 0.0
    assert not result.trivial
    assert result.gap_lower_bound == pytest.approx(math.log(3))


def test_mean_log_tau_mixed_rows():
    """Gossip steps have mixed rows, so the bound is trivial."""
    process = GossipProcess(ProcessConfig(bidirectional_pair(), drop_rate=0.5))
    result = mean_log_tau(process, 50, seed=0)
    assert result.mean == 0.0
    assert result.trivial


def test_mean_log_tau_lower_bounds_gap():
    """-E log tau(A1) should not exceed the QR gap beyond noise."""
    process = UniformPositiveProcess(3, column_stochastic=True)
    qr = estimate_top2(process, 5000, seed=2)
    bound = mean_log_tau(process, 500, seed=2)
    assert bound.gap_lower_bound <= qr.gap + 3 * bound.standard_error
