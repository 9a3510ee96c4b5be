import pytest
from pushex.errors import DomainError
from pushex.process.generators import (
    bidirectional_pair,
    complete_digraph,
    random_regular_out_digraph,
)


def test_random_regular_out_digraph():
    """Every node should have exactly d distinct out-neighbors."""
    topology = random_regular_out_digraph(30, 10, seed=0)
    assert topology.p == 30
    assert topology.n_edges == 300
    assert (topology.out_degrees == 10).all()
    for node, targets in enumerate(topology.out_neighbors):
        assert node not in targets
        assert len(set(targets)) == 10


def test_out_degree_one():
    """The smallest network should still be valid."""
    topology = random_regular_out_digraph(2, 1, seed=0)
    assert topology == bidirectional_pair()


def test_invalid_out_degree():
    """d must be smaller than p."""
    with pytest.raises(DomainError):
        random_regular_out_digraph(5, 5, seed=0)
    with pytest.raises(DomainError):
        random_regular_out_digraph(5, 0, seed=0)


def test_deterministic():
    """The same seed should give the same network."""
    first = random_regular_out_digraph(8, 3, seed=4)
    assert random_regular_out_digraph(8, 3, seed=4) == first


@pytest.mark.parametrize("seed", range(5))
def test_strongly_connected_option(seed):
    """The redraw option should always give a strongly connected network."""
    topology = random_regular_out_digraph(5, 2, seed=seed, strongly_connected=True)
    assert topology.is_strongly_connected


def test_complete_digraph():
    """The complete digraph should have p(p-1) edges."""
    topology = complete_digraph(4)
    assert topology.n_edges == 12
    assert topology.is_strongly_connected
