from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..typing import IntArray
from .topology import NetworkTopology


@dataclass(frozen=True)
class AugmentedIndex:
    """
    Coordinate layout of the augmented network.

    Real nodes occupy coordinates 0..p_real−1; the buffer of edge k sits at
    coordinate p_real + k.

    Attributes
    ----------
    p_real : int
        Number of real nodes.
    n_buffers : int
        Number of edge buffers (= number of edges).
    buffer_of_edge : IntArray
        Augmented coordinate of every edge's buffer, by edge ordinal.
    """

    p_real: int
    n_buffers: int
    buffer_of_edge: IntArray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.p_real + self.n_buffers

    @property
    def real_coordinates(self) -> slice:
        return slice(0, self.p_real)

    @property
    def buffer_coordinates(self) -> slice:
        return slice(self.p_real, self.dim)

    def edge_of_buffer(self, coordinate: int) -> int:
        """Returns the edge ordinal stored at a buffer coordinate."""
        if not self.p_real <= coordinate < self.dim:
            raise IndexError(f"Coordinate {coordinate} is not a buffer.")
        return coordinate - self.p_real

    def is_buffer(self, coordinate: int) -> bool:
        return self.p_real <= coordinate < self.dim

    def labels(self) -> list[str]:
        """Returns coordinate labels: "N<node>" for real nodes, "B<edge>" for buffers."""
        return [f"N{i}" for i in range(self.p_real)] + [
            f"B{k}" for k in range(self.n_buffers)
        ]


def build_augmented(topology: NetworkTopology) -> AugmentedIndex:
    """
    Lays out the augmented network of a topology: real nodes first, then one
    buffer per directed edge in edge-ordinal order.

    Examples
    --------
    >>> build_augmented(NetworkTopology(2, [[1], [0]])).dim
    4
    """
    buffers = topology.p + np.arange(topology.n_edges, dtype=np.int64)
    buffers.setflags(write=False)
    return AugmentedIndex(
        p_real=topology.p,
        n_buffers=topology.n_edges,
        buffer_of_edge=buffers,
    )
