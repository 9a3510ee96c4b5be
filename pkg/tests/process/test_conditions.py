import pytest
from pushex.errors import DomainError
from pushex.process import ProcessConfig, verify_conditions
from pushex.process.generators import (
    bidirectional_pair,
    complete_digraph,
    random_regular_out_digraph,
)


def test_pair_conditions():
    """The pair range should give exact bounds on its entries."""
    config = ProcessConfig(bidirectional_pair(), drop_rate=0.5, s=0.5)
    report = verify_conditions(config, psi_trials=10, psi_horizon=100)
    assert report.finite_range
    assert report.exact
    assert report.range_size == 4
    assert report.n_samples == 0
    assert report.alpha_min == 0.5
    assert report.beta_max == 1.0
    assert report.bounded_condition


def test_complete_graph_without_drops():
    """A lossless complete graph should mix in a few steps."""
    config = ProcessConfig(complete_digraph(3))
    report = verify_conditions(config, psi_trials=10, psi_horizon=100)
    assert report.bounded_condition
    assert report.psi_reached == 10
    assert report.psi_expectation_estimate is not None
    assert report.psi_expectation_estimate <= 3


def test_psi_finite_with_drops():
    """psi should be finite in every trial for a connected lossy network."""
    topology = random_regular_out_digraph(5, 2, seed=0, strongly_connected=True)
    config = ProcessConfig(topology, drop_rate=0.2)
    report = verify_conditions(config, psi_trials=100, psi_horizon=1000)
    assert report.psi_trials == 100
    assert report.psi_reached == 100


def test_sampled_bounds():
    """Ranges too large to enumerate should fall back to sampling."""
    config = ProcessConfig(complete_digraph(6), drop_rate=0.1)
    report = verify_conditions(config, n_samples=50, psi_trials=2, psi_horizon=50)
    assert not report.exact
    assert report.n_samples == 50
    assert report.range_size is None
    assert 0 < report.alpha_min <= report.beta_max <= 1.0


def test_invalid_sample_count():
    """n_samples must be positive."""
    with pytest.raises(DomainError):
        verify_conditions(ProcessConfig(bidirectional_pair()), n_samples=0)
