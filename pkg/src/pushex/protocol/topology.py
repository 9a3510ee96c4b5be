from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import Final, Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from ..errors import DomainError
from ..typing import IntArray

COMMENT_PREFIX: Final = "#"


class NetworkTopology:
    """
    A directed communication network.

    Edges are numbered densely in the order of the senders' out-neighbor
    lists: all edges of node 0 first, then node 1, and so on.

    Parameters
    ----------
    p : int
        Number of nodes.
    out_neighbors : Sequence[Sequence[int]]
        Ordered target lists, one per node.

    Raises
    ------
    DomainError
        If a node has no out-neighbor, a self-loop or duplicate edge is given,
        or a target is out of range.

    Examples
    --------
    >>> topology = NetworkTopology(2, [[1], [0]])
    >>> topology.edges
    ((0, 1), (1, 0))
    """

    def __init__(
        self,
        p: int,
        out_neighbors: Sequence[Sequence[int]],
    ):
        if p < 2:
            raise DomainError(
                f"p ({p}) must be at least 2: every node needs an out-neighbor "
                "other than itself."
            )
        if len(out_neighbors) != p:
            raise DomainError(
                f"Expected {p} out-neighbor lists, got {len(out_neighbors)}."
            )
        neighbors = []
        for node, targets in enumerate(out_neighbors):
            targets = tuple(int(target) for target in targets)
            if len(targets) == 0:
                raise DomainError(f"Node {node} has no out-neighbor.")
            if len(set(targets)) != len(targets):
                raise DomainError(f"Node {node} has duplicate out-edges.")
            for target in targets:
                if target == node:
                    raise DomainError(f"Self-loop at node {node} is not allowed.")
                if not 0 <= target < p:
                    raise DomainError(
                        f"Target {target} of node {node} is out of range [0, {p})."
                    )
            neighbors.append(targets)

        self.p: Final = p
        self.out_neighbors: Final = tuple(neighbors)
        self.edges: Final = tuple(
            (node, target)
            for node, targets in enumerate(self.out_neighbors)
            for target in targets
        )
        self.edge_index: Final = {edge: k for k, edge in enumerate(self.edges)}

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        p: Optional[int] = None,
    ) -> NetworkTopology:
        """
        Creates a topology from an edge list.

        Parameters
        ----------
        edges : Iterable[tuple[int, int]]
            Directed (sender, receiver) pairs, 0-indexed.
        p : int, optional
            Number of nodes, by default the largest id plus one.
        """
        edges = [(int(i), int(j)) for i, j in edges]
        if p is None:
            p = 1 + max((max(edge) for edge in edges), default=0)
        out_neighbors: list[list[int]] = [[] for _ in range(p)]
        for i, j in edges:
            if not 0 <= i < p:
                raise DomainError(f"Sender {i} is out of range [0, {p}).")
            out_neighbors[i].append(j)
        return cls(p, out_neighbors)

    @classmethod
    def load(cls, path: str | Path, p: Optional[int] = None) -> NetworkTopology:
        """
        Loads a topology from an edge-list text file.

        Each non-empty line holds one "i j" pair (0-indexed); text after '#'
        is a comment.
        """
        edges = []
        with open(path, "r", encoding="utf-8") as file:
            for number, line in enumerate(file, start=1):
                content = line.split(COMMENT_PREFIX, 1)[0].strip()
                if not content:
                    continue
                fields = content.split()
                if len(fields) != 2:
                    raise DomainError(
                        f"{path}:{number}: expected 'i j', got '{content}'."
                    )
                try:
                    edges.append((int(fields[0]), int(fields[1])))
                except ValueError:
                    raise DomainError(
                        f"{path}:{number}: node ids must be integers."
                    ) from None
        return cls.from_edges(edges, p=p)

    def to_edge_list(self) -> str:
        """Returns the topology in the edge-list text format."""
        lines = [f"# p={self.p}"] + [f"{i} {j}" for i, j in self.edges]
        return "\n".join(lines) + "\n"

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def out_degrees(self) -> IntArray:
        return np.array([len(targets) for targets in self.out_neighbors])

    @cached_property
    def sources(self) -> IntArray:
        """Sender of every edge, by edge ordinal."""
        return np.array([edge[0] for edge in self.edges], dtype=np.int64)

    @cached_property
    def targets(self) -> IntArray:
        """Receiver of every edge, by edge ordinal."""
        return np.array([edge[1] for edge in self.edges], dtype=np.int64)

    def edges_of(self, node: int) -> IntArray:
        """Returns the ordinals of the out-edges of `node`."""
        return np.flatnonzero(self.sources == node)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.p))
        graph.add_edges_from(self.edges)
        return graph

    @property
    def is_strongly_connected(self) -> bool:
        return nx.is_strongly_connected(self.graph)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NetworkTopology):
            return NotImplemented
        return self.p == other.p and self.out_neighbors == other.out_neighbors

    def __hash__(self) -> int:
        return hash((self.p, self.out_neighbors))

    def __repr__(self) -> str:
        return f"NetworkTopology(p={self.p}, n_edges={self.n_edges})"
