from __future__ import annotations

from typing import Final

from ..errors import DomainError
from ..protocol import NetworkTopology
from ..rng import STREAM_TOPOLOGY, make_rng

MAX_DRAWS: Final = 1000


def random_regular_out_digraph(
    p: int,
    d: int,
    seed: int,
    strongly_connected: bool = False,
) -> NetworkTopology:
    """
    Samples a digraph in which every node has exactly `d` out-neighbors.

    Each node draws its targets uniformly without replacement among the other
    p−1 nodes.

    Parameters
    ----------
    p : int
        Number of nodes.
    d : int
        Out-degree, 1 ≤ d < p.
    seed : int
        Seed of the topology stream.
    strongly_connected : bool, optional
        Whether to redraw, from the same stream, until the digraph is strongly
        connected. By default the first draw is returned.

    Returns
    -------
    NetworkTopology
        The sampled network.

    Examples
    --------
    >>> random_regular_out_digraph(30, 10, seed=0).n_edges
    300
    """
    if not 1 <= d < p:
        raise DomainError(f"Out-degree d ({d}) must satisfy 1 ≤ d < p ({p}).")
    rng = make_rng(seed, STREAM_TOPOLOGY)
    for _ in range(MAX_DRAWS):
        out_neighbors = []
        for node in range(p):
            others = [other for other in range(p) if other != node]
            targets = rng.choice(others, size=d, replace=False)
            out_neighbors.append(sorted(int(target) for target in targets))
        topology = NetworkTopology(p, out_neighbors)
        if not strongly_connected or topology.is_strongly_connected:
            return topology
    raise DomainError(
        f"No strongly connected digraph with p={p}, d={d} in {MAX_DRAWS} draws."
    )


def complete_digraph(p: int) -> NetworkTopology:
    """Returns the complete digraph on p nodes without self-loops."""
    return NetworkTopology(
        p, [[target for target in range(p) if target != node] for node in range(p)]
    )


def bidirectional_pair() -> NetworkTopology:
    """Returns the two-node network with edges 0→1 and 1→0."""
    return NetworkTopology(2, [[1], [0]])
