from __future__ import annotations

from dataclasses import dataclass, field
from typing import Final, Optional

import numpy as np
import numpy.typing as npt

from ..cones import NonNegMatrix
from ..errors import DomainError
from ..typing import BoolArray, FloatArray, Mode, TransmitFraction
from .augmented import AugmentedIndex, build_augmented
from .topology import NetworkTopology

MODES: Final = ("sync", "async")


def transmit_fractions(
    topology: NetworkTopology,
    s: TransmitFraction | npt.ArrayLike,
) -> FloatArray:
    """
    Resolves the transmit fraction of every node.

    Parameters
    ----------
    topology : NetworkTopology
        The network.
    s : float | "classic" | ArrayLike
        A common fraction in (0, 1], "classic" for dᵢ/(dᵢ+1) (equal split
        between the node and its out-neighbors), or one value per node.
    """
    if isinstance(s, str):
        if s != "classic":
            raise DomainError(f"Unknown transmit fraction preset '{s}'.")
        degrees = topology.out_degrees.astype(np.float64)
        return degrees / (degrees + 1.0)
    try:
        fractions = np.broadcast_to(
            np.asarray(s, dtype=np.float64), (topology.p,)
        ).copy()
    except ValueError:
        raise DomainError(
            f"Expected one transmit fraction or {topology.p}, got {s}."
        ) from None
    if np.any(fractions <= 0) or np.any(fractions > 1):
        raise DomainError(f"Transmit fractions must lie in (0, 1], got {s}.")
    return fractions


@dataclass(frozen=True)
class ProtocolState:
    """
    Values and weights over the augmented coordinates.

    Attributes
    ----------
    x : FloatArray
        Value vector; may carry signed entries.
    w : FloatArray
        Weight vector; nonnegative and nonzero.
    step : int
        Number of protocol steps applied.
    """

    x: FloatArray = field(repr=False)
    w: FloatArray = field(repr=False)
    step: int = 0

    def __post_init__(self):
        if self.x.shape != self.w.shape or self.x.ndim != 1:
            raise DomainError(
                f"x and w must be vectors of equal length "
                f"({self.x.shape} != {self.w.shape})."
            )
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.w))):
            raise DomainError("State entries must be finite.")
        if np.any(self.w < 0):
            raise DomainError("Weights must be nonnegative.")
        if not np.any(self.w > 0):
            raise DomainError("Weights must not all be zero.")
        self.x.setflags(write=False)
        self.w.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class StepOutcome:
    """
    Random events of one protocol step.

    Attributes
    ----------
    live_edges : BoolArray
        Delivery flag per edge. In async mode only the woken node's edges can
        be live.
    woken_node : int, optional
        The activated node in async mode; None in sync mode.
    matrix : NonNegMatrix, optional
        The materialized transition matrix, when requested.
    """

    live_edges: BoolArray = field(repr=False)
    woken_node: Optional[int] = None
    matrix: Optional[NonNegMatrix] = field(default=None, repr=False, compare=False)

    @property
    def mode(self) -> Mode:
        return "sync" if self.woken_node is None else "async"


class PushSumProtocol:
    """
    The running-sums push-sum protocol on the augmented network.

    Every activation of node i keeps (1−sᵢ)·xᵢ and pushes sᵢ/dᵢ·xᵢ into the
    buffer of each out-edge. A live buffer delivers its whole content to the
    receiver and empties; a dropped buffer keeps accumulating. The same rule
    applies to the weights.

    Parameters
    ----------
    topology : NetworkTopology
        The network.
    s : float | "classic" | ArrayLike, optional
        Transmit fraction(s), by default "classic".
    mode : {"sync", "async"}, optional
        Whether all nodes transmit every step or a single uniformly chosen one.
    """

    def __init__(
        self,
        topology: NetworkTopology,
        s: TransmitFraction | npt.ArrayLike = "classic",
        mode: Mode = "sync",
    ):
        if mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got '{mode}'.")
        self.topology: Final = topology
        self.augmented: Final[AugmentedIndex] = build_augmented(topology)
        self.mode: Final = mode
        self.fractions: Final = transmit_fractions(topology, s)
        self.keep: Final = 1.0 - self.fractions
        self.shares: Final = (self.fractions / topology.out_degrees)[topology.sources]
        incidence = np.zeros((topology.p, topology.n_edges))
        incidence[topology.targets, np.arange(topology.n_edges)] = 1.0
        self._incidence = incidence

    @property
    def p(self) -> int:
        return self.topology.p

    @property
    def dim(self) -> int:
        return self.augmented.dim

    def initial_state(self, x0: npt.ArrayLike, w0: npt.ArrayLike) -> ProtocolState:
        """
        Builds a state from initial values and weights.

        Parameters
        ----------
        x0, w0 : ArrayLike
            Either one entry per real node (buffers start empty) or one entry
            per augmented coordinate with zero buffers.
        """
        x = self._lift(x0, "x0")
        w = self._lift(w0, "w0")
        return ProtocolState(x=x, w=w, step=0)

    def _lift(self, values: npt.ArrayLike, name: str) -> FloatArray:
        vector = np.array(values, dtype=np.float64).reshape(-1)
        if len(vector) == self.p:
            return np.concatenate([vector, np.zeros(self.augmented.n_buffers)])
        if len(vector) == self.dim:
            if np.any(vector[self.augmented.buffer_coordinates] != 0):
                raise DomainError(f"{name} must be zero on buffer coordinates.")
            return vector
        raise DomainError(
            f"{name} has length {len(vector)}; expected {self.p} or {self.dim}."
        )

    def sample_outcome(
        self,
        rng: np.random.Generator,
        drop_rate: float,
    ) -> StepOutcome:
        """
        Draws the events of one step: i.i.d. Bernoulli(drop_rate) drops per
        edge, and a uniformly woken node in async mode.
        """
        if not 0 <= drop_rate <= 1:
            raise DomainError(f"drop_rate ({drop_rate}) must be in [0, 1].")
        n_edges = self.topology.n_edges
        if self.mode == "sync":
            live = rng.random(n_edges) >= drop_rate
            return StepOutcome(live_edges=live)
        woken = int(rng.integers(self.p))
        edges = self.topology.edges_of(woken)
        live = np.zeros(n_edges, dtype=bool)
        live[edges] = rng.random(len(edges)) >= drop_rate
        return StepOutcome(live_edges=live, woken_node=woken)

    def step_synchronous(self, state: ProtocolState, live: npt.ArrayLike) -> ProtocolState:
        """
        Applies one synchronous step: every node transmits.

        Parameters
        ----------
        state : ProtocolState
            The current state.
        live : ArrayLike
            Delivery flag per edge.
        """
        live = self._check_live(live, self.topology.n_edges)
        self._check_state(state)
        values = np.stack([state.x, state.w], axis=1)
        p = self.p
        real = values[:p]
        content = values[p:] + self.shares[:, None] * real[self.topology.sources]
        delivered = np.where(live[:, None], content, 0.0)
        updated = np.empty_like(values)
        updated[:p] = self.keep[:, None] * real + self._incidence @ delivered
        updated[p:] = np.where(live[:, None], 0.0, content)
        return ProtocolState(x=updated[:, 0], w=updated[:, 1], step=state.step + 1)

    def step_asynchronous(
        self,
        state: ProtocolState,
        woken: int,
        live: npt.ArrayLike,
    ) -> ProtocolState:
        """
        Applies one asynchronous step: only `woken` transmits.

        Parameters
        ----------
        state : ProtocolState
            The current state.
        woken : int
            The activated node.
        live : ArrayLike
            Delivery flag per out-edge of `woken`, in out-neighbor order.
        """
        if not 0 <= woken < self.p:
            raise DomainError(f"Woken node {woken} is out of range [0, {self.p}).")
        edges = self.topology.edges_of(woken)
        live = self._check_live(live, len(edges))
        self._check_state(state)
        values = np.stack([state.x, state.w], axis=1)
        updated = values.copy()
        sent = values[woken]
        updated[woken] = self.keep[woken] * sent
        for edge, is_live in zip(edges.tolist(), live.tolist()):
            buffer = self.p + edge
            content = values[buffer] + self.shares[edge] * sent
            if is_live:
                updated[self.topology.targets[edge]] += content
                updated[buffer] = 0.0
            else:
                updated[buffer] = content
        return ProtocolState(x=updated[:, 0], w=updated[:, 1], step=state.step + 1)

    def step(self, state: ProtocolState, outcome: StepOutcome) -> ProtocolState:
        """Applies the step described by `outcome`."""
        if outcome.woken_node is None:
            if self.mode != "sync":
                raise DomainError("A sync outcome was given to an async protocol.")
            return self.step_synchronous(state, outcome.live_edges)
        if self.mode != "async":
            raise DomainError("An async outcome was given to a sync protocol.")
        edges = self.topology.edges_of(outcome.woken_node)
        return self.step_asynchronous(
            state, outcome.woken_node, outcome.live_edges[edges]
        )

    def as_matrix(self, outcome: StepOutcome) -> NonNegMatrix:
        """
        Materializes the column-stochastic transition matrix of a step.

        Applying the step equals multiplying the state by this matrix. Buffer
        rows are zero exactly for the live edges.
        """
        topology = self.topology
        live = self._check_live(outcome.live_edges, topology.n_edges)
        dim = self.dim
        sources, targets = topology.sources, topology.targets
        buffers = self.augmented.buffer_of_edge
        if outcome.woken_node is None:
            if self.mode != "sync":
                raise DomainError("A sync outcome was given to an async protocol.")
            A = np.zeros((dim, dim))
            nodes = np.arange(self.p)
            A[nodes, nodes] = self.keep
            A[targets[live], sources[live]] = self.shares[live]
            A[targets[live], buffers[live]] = 1.0
            dropped = ~live
            A[buffers[dropped], sources[dropped]] = self.shares[dropped]
            A[buffers[dropped], buffers[dropped]] = 1.0
            return NonNegMatrix(A)

        if self.mode != "async":
            raise DomainError("An async outcome was given to a sync protocol.")
        woken = outcome.woken_node
        edges = topology.edges_of(woken)
        A = np.eye(dim)
        A[woken, woken] = self.keep[woken]
        for edge in edges.tolist():
            buffer = buffers[edge]
            if live[edge]:
                A[targets[edge], woken] = self.shares[edge]
                A[buffer, buffer] = 0.0
                A[targets[edge], buffer] = 1.0
            else:
                A[buffer, woken] = self.shares[edge]
        return NonNegMatrix(A)

    def ratios(self, state: ProtocolState) -> list[Optional[float]]:
        """
        Returns xᵢ/wᵢ for every real node, or None where wᵢ = 0.

        Buffer coordinates are never reported.
        """
        x = state.x[: self.p]
        w = state.w[: self.p]
        return [
            float(x_i / w_i) if w_i > 0 else None
            for x_i, w_i in zip(x.tolist(), w.tolist())
        ]

    def _check_live(self, live: npt.ArrayLike, length: int) -> BoolArray:
        flags = np.asarray(live, dtype=bool).reshape(-1)
        if len(flags) != length:
            raise DomainError(
                f"Expected {length} delivery flags, got {len(flags)}."
            )
        return flags

    def _check_state(self, state: ProtocolState):
        if state.dim != self.dim:
            raise DomainError(
                f"State dimension {state.dim} does not match the network ({self.dim})."
            )


def as_matrix(
    topology: NetworkTopology,
    augmented: AugmentedIndex,
    outcome: StepOutcome,
    s: TransmitFraction | npt.ArrayLike,
    mode: Mode,
) -> NonNegMatrix:
    """Materializes the transition matrix of `outcome`; see `PushSumProtocol.as_matrix`."""
    if augmented.dim != topology.p + topology.n_edges:
        raise DomainError("Augmented index does not belong to the topology.")
    return PushSumProtocol(topology, s=s, mode=mode).as_matrix(outcome)
