from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Final, Optional

import numpy as np

from ..cones import NonNegMatrix
from ..errors import DomainError, RangeTooLargeError
from ..protocol import NetworkTopology, PushSumProtocol, StepOutcome
from ..protocol.push_sum import MODES
from ..typing import BoolArray, FloatArray, IntArray, Mode, TransmitFraction
from .matrix_process import MatrixProcess, RangeElement

MAX_SYNC_EDGES: Final = 20
MAX_ASYNC_PATTERNS: Final = 1_000_000
# dense storage bound for an enumerated range, in matrix entries
MAX_RANGE_ENTRIES: Final = 50_000_000


@dataclass(frozen=True)
class ProcessConfig:
    """
    Parameters of a push-sum gossip matrix process.

    Attributes
    ----------
    topology : NetworkTopology
        The network.
    mode : {"sync", "async"}
        Protocol mode.
    drop_rate : float
        Per-edge drop probability r_drop in [0, 1].
    s : float | "classic" | tuple[float, ...]
        Transmit fraction(s) in (0, 1].
    seed : int
        Experiment seed.
    """

    topology: NetworkTopology
    mode: Mode = "sync"
    drop_rate: float = 0.0
    s: TransmitFraction | tuple[float, ...] = "classic"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got '{self.mode}'.")
        if not 0 <= self.drop_rate <= 1:
            raise DomainError(f"drop_rate ({self.drop_rate}) must be in [0, 1].")
        if self.seed < 0:
            raise DomainError(f"seed ({self.seed}) must be nonnegative.")

    def replaced(self, **changes) -> ProcessConfig:
        """Returns a copy with the given fields changed."""
        return replace(self, **changes)


@dataclass(frozen=True)
class RowStructure:
    """
    Exact per-coordinate row facts of the one-step matrix distribution.

    Attributes
    ----------
    diagonal_always_positive : BoolArray
        Whether Aₙ[i, i] > 0 for every matrix of the range.
    zero_row_probability : FloatArray
        P(row i of Aₙ is zero).
    """

    diagonal_always_positive: BoolArray = field(repr=False)
    zero_row_probability: FloatArray = field(repr=False)


class GossipProcess(MatrixProcess):
    """
    The i.i.d. transition-matrix process of push-sum with packet drops.

    Parameters
    ----------
    config : ProcessConfig
        The process parameters.

    Examples
    --------
    >>> from pushex.process.generators import bidirectional_pair
    >>> process = GossipProcess(ProcessConfig(bidirectional_pair(), drop_rate=0.5))
    >>> process.dim
    4
    """

    def __init__(self, config: ProcessConfig):
        self.config: Final = config
        self.protocol: Final = PushSumProtocol(
            config.topology, s=config.s, mode=config.mode
        )

    @property
    def dim(self) -> int:
        return self.protocol.dim

    @property
    def topology(self) -> NetworkTopology:
        return self.config.topology

    def sample_step(
        self,
        rng: np.random.Generator,
    ) -> tuple[NonNegMatrix, StepOutcome]:
        """Draws the events of one step and materializes its matrix."""
        outcome = self.protocol.sample_outcome(rng, self.config.drop_rate)
        matrix = self.protocol.as_matrix(outcome)
        return matrix, replace(outcome, matrix=matrix)

    def sample(self, rng: np.random.Generator) -> NonNegMatrix:
        return self.sample_step(rng)[0]

    def sample_with_columns(
        self,
        rng: np.random.Generator,
    ) -> tuple[NonNegMatrix, Optional[IntArray]]:
        matrix, outcome = self.sample_step(rng)
        if outcome.woken_node is None:
            return matrix, None
        woken = outcome.woken_node
        edges = self.topology.edges_of(woken)
        live = edges[outcome.live_edges[edges]]
        buffers = self.protocol.augmented.buffer_of_edge[live]
        return matrix, np.concatenate([[woken], buffers]).astype(np.int64)

    def finite_range(self) -> Optional[list[RangeElement]]:
        try:
            return enumerate_range(self.config)
        except RangeTooLargeError:
            return None

    def row_structure(self) -> RowStructure:
        """
        Computes, for every augmented coordinate, whether its diagonal entry is
        positive in every step matrix and how likely its row is to be zero.
        """
        topology = self.topology
        p = topology.p
        r = self.config.drop_rate
        fractions = self.protocol.fractions
        full_transmit = fractions >= 1.0
        in_degrees = np.bincount(topology.targets, minlength=p)

        diagonal = np.ones(self.dim, dtype=bool)
        zero = np.zeros(self.dim)
        diagonal[:p] = ~full_transmit
        diagonal[p:] = r >= 1.0
        if self.config.mode == "sync":
            # a fully transmitting node keeps nothing and hears nothing when all
            # of its in-edges drop
            zero[:p] = np.where(full_transmit, float(r) ** in_degrees, 0.0)
            zero[p:] = 1.0 - r
        else:
            zero[:p] = np.where(full_transmit, 1.0 / p, 0.0)
            zero[p:] = (1.0 - r) / p
        return RowStructure(
            diagonal_always_positive=diagonal,
            zero_row_probability=zero,
        )


def sample_step_matrix(
    config: ProcessConfig,
    rng: np.random.Generator,
) -> tuple[NonNegMatrix, StepOutcome]:
    """
    Draws one step of the process: the drop mask (and woken node in async
    mode) and the transition matrix it induces.

    Successive calls with the same generator are i.i.d.
    """
    return GossipProcess(config).sample_step(rng)


def _live_choices(drop_rate: float) -> tuple[bool, ...]:
    if drop_rate == 0:
        return (True,)
    if drop_rate == 1:
        return (False,)
    return (True, False)


def _pattern_probability(pattern: tuple[bool, ...], drop_rate: float) -> float:
    return math.prod((1.0 - drop_rate) if live else drop_rate for live in pattern)


def _check_storage(n_patterns: int, dim: int):
    if n_patterns * dim * dim > MAX_RANGE_ENTRIES:
        raise RangeTooLargeError(
            f"Storing {n_patterns} matrices of dimension {dim} exceeds "
            f"{MAX_RANGE_ENTRIES} entries; use Monte Carlo sampling instead."
        )


def enumerate_range(config: ProcessConfig) -> list[RangeElement]:
    """
    Enumerates the exact finite range of the step distribution.

    Parameters
    ----------
    config : ProcessConfig
        The process parameters.

    Returns
    -------
    list[RangeElement]
        Distinct matrices with their probabilities, in first-seen order.
        Probabilities are products of Bernoulli terms, times 1/p in async mode.

    Raises
    ------
    RangeTooLargeError
        If sync mode has more than 20 edges, async mode needs more than 10⁶
        patterns, or the matrices would not fit the storage bound. Use Monte
        Carlo sampling instead.

    Examples
    --------
    >>> from pushex.process.generators import bidirectional_pair
    >>> elements = enumerate_range(ProcessConfig(bidirectional_pair(), drop_rate=0.5))
    >>> [element.probability for element in elements]
    [0.25, 0.25, 0.25, 0.25]
    """
    topology = config.topology
    protocol = PushSumProtocol(topology, s=config.s, mode=config.mode)
    choices = _live_choices(config.drop_rate)
    weights: dict[NonNegMatrix, float] = {}

    if config.mode == "sync":
        if topology.n_edges > MAX_SYNC_EDGES:
            raise RangeTooLargeError(
                f"The sync range has 2^{topology.n_edges} drop patterns "
                f"(limit 2^{MAX_SYNC_EDGES}); use Monte Carlo sampling instead."
            )
        _check_storage(len(choices) ** topology.n_edges, protocol.dim)
        for pattern in itertools.product(choices, repeat=topology.n_edges):
            outcome = StepOutcome(live_edges=np.array(pattern, dtype=bool))
            matrix = protocol.as_matrix(outcome)
            probability = _pattern_probability(pattern, config.drop_rate)
            weights[matrix] = weights.get(matrix, 0.0) + probability
        return [RangeElement(m, prob) for m, prob in weights.items()]

    n_patterns = topology.p * 2 ** int(topology.out_degrees.max())
    if n_patterns > MAX_ASYNC_PATTERNS:
        raise RangeTooLargeError(
            f"The async range has up to {n_patterns} patterns "
            f"(limit {MAX_ASYNC_PATTERNS}); use Monte Carlo sampling instead."
        )
    _check_storage(
        sum(len(choices) ** int(degree) for degree in topology.out_degrees),
        protocol.dim,
    )
    for woken in range(topology.p):
        edges = topology.edges_of(woken)
        for pattern in itertools.product(choices, repeat=len(edges)):
            live = np.zeros(topology.n_edges, dtype=bool)
            live[edges] = pattern
            outcome = StepOutcome(live_edges=live, woken_node=woken)
            matrix = protocol.as_matrix(outcome)
            probability = _pattern_probability(pattern, config.drop_rate) / topology.p
            weights[matrix] = weights.get(matrix, 0.0) + probability
    return [RangeElement(m, prob) for m, prob in weights.items()]
