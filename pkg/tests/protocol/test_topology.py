import pytest
from pushex.errors import DomainError
from pushex.protocol import NetworkTopology, build_augmented


def test_init():
    """Edges should be numbered in the order of the senders' lists."""
    topology = NetworkTopology(3, [[1, 2], [2], [0]])
    assert topology.edges == ((0, 1), (0, 2), (1, 2), (2, 0))
    assert topology.n_edges == 4
    assert topology.out_degrees.tolist() == [2, 1, 1]
    assert topology.edge_index[(1, 2)] == 2
    assert topology.edges_of(0).tolist() == [0, 1]


def test_invalid_topologies():
    """Self-loops, duplicate edges and sinks should be rejected."""
    with pytest.raises(DomainError):
        NetworkTopology(2, [[0], [0]])
    with pytest.raises(DomainError):
        NetworkTopology(2, [[1, 1], [0]])
    with pytest.raises(DomainError):
        NetworkTopology(2, [[1], []])
    with pytest.raises(DomainError):
        NetworkTopology(2, [[2], [0]])
    with pytest.raises(DomainError):
        NetworkTopology(1, [[]])


def test_from_edges():
    """from_edges should infer p from the largest node id."""
    topology = NetworkTopology.from_edges([(0, 1), (1, 2), (2, 0)])
    assert topology.p == 3
    assert topology.out_neighbors == ((1,), (2,), (0,))


def test_load(tmp_path):
    """load should read an edge list with comments."""
    path = tmp_path / "ring.txt"
    path.write_text("# ring\n0 1\n1 2  # second edge\n\n2 0\n", encoding="utf-8")
    topology = NetworkTopology.load(path)
    assert topology == NetworkTopology(3, [[1], [2], [0]])


def test_load_invalid_line(tmp_path):
    """load should name the offending line."""
    path = tmp_path / "bad.txt"
    path.write_text("0 1 2\n", encoding="utf-8")
    with pytest.raises(DomainError, match="bad.txt:1"):
        NetworkTopology.load(path)


def test_edge_list_text(tmp_path):
    """to_edge_list should produce a loadable file."""
    topology = NetworkTopology(3, [[1, 2], [0], [1]])
    path = tmp_path / "graph.txt"
    path.write_text(topology.to_edge_list(), encoding="utf-8")
    assert NetworkTopology.load(path) == topology


def test_strong_connectivity():
    """is_strongly_connected should use the directed graph."""
    assert NetworkTopology(3, [[1], [2], [0]]).is_strongly_connected
    assert not NetworkTopology(3, [[1], [0], [0]]).is_strongly_connected


def test_augmented_layout():
    """Buffers should follow the real nodes in edge order."""
    augmented = build_augmented(NetworkTopology(3, [[1, 2], [2], [0]]))
    assert augmented.dim == 7
    assert augmented.buffer_of_edge.tolist() == [3, 4, 5, 6]
    assert augmented.edge_of_buffer(5) == 2
    assert augmented.is_buffer(3) and not augmented.is_buffer(2)
    assert augmented.labels() == ["N0", "N1", "N2", "B0", "B1", "B2", "B3"]
    with pytest.raises(IndexError):
        augmented.edge_of_buffer(0)
