from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from tqdm import tqdm

from ..errors import DomainError
from ..process.gossip_process import GossipProcess, ProcessConfig
from ..rng import trial_rng
from ..typing import BoolArray, FloatArray
from .support import SupportPattern, identity_deviation, support_product


class NodeKind(Enum):
    REAL = "real"
    VIRTUAL = "virtual"


@dataclass(frozen=True)
class NodeClassification:
    """
    Real/virtual split of the augmented coordinates.

    Attributes
    ----------
    kinds : tuple[NodeKind, ...]
        Kind of every augmented coordinate.
    structural : BoolArray
        Whether the kind was decided from the exact row structure of the
        process rather than from sampling.
    zero_row_frequency : FloatArray
        Observed frequency of eᵢᵀMₙ = 0 over the second half of every trial.
    trials, horizon : int
        Size of the Monte Carlo run.
    """

    kinds: tuple[NodeKind, ...]
    structural: BoolArray = field(repr=False)
    zero_row_frequency: FloatArray = field(repr=False)
    trials: int
    horizon: int

    @property
    def real_nodes(self) -> list[int]:
        return [i for i, kind in enumerate(self.kinds) if kind is NodeKind.REAL]

    @property
    def virtual_nodes(self) -> list[int]:
        return [i for i, kind in enumerate(self.kinds) if kind is NodeKind.VIRTUAL]

    def as_sets(self) -> tuple[set[int], set[int]]:
        return set(self.real_nodes), set(self.virtual_nodes)


def zero_row_frequencies(
    process: GossipProcess,
    trials: int,
    horizon: int,
    seed: int,
    progress: bool = False,
) -> FloatArray:
    """
    Returns, per coordinate, how often row i of the product support is zero
    during steps horizon//2+1 … horizon, pooled over trials.
    """
    if trials < 1:
        raise DomainError(f"trials ({trials}) must be at least 1.")
    if horizon < 2:
        raise DomainError(f"horizon ({horizon}) must be at least 2.")
    burn_in = horizon // 2
    counts = np.zeros(process.dim)
    for trial in tqdm(range(trials), disable=not progress, desc="classify"):
        rng = trial_rng(seed, trial)
        product = SupportPattern.identity(process.dim)
        for n in range(1, horizon + 1):
            pattern = process.sample(rng).support
            product = support_product(
                SupportPattern(pattern), product, identity_deviation(pattern)
            )
            if n > burn_in:
                counts += product.zero_rows
    return counts / (trials * (horizon - burn_in))


def classify_nodes(
    config: ProcessConfig | GossipProcess,
    trials: int = 10,
    horizon: int = 1000,
    progress: bool = False,
) -> NodeClassification:
    """
    Splits the augmented coordinates into real and virtual nodes.

    A coordinate whose diagonal entry is positive in every step matrix can
    never have a zero row in Mₙ, so it is real. A coordinate whose row of Aₙ
    is zero with positive probability is zero infinitely often, so it is
    virtual. The remaining coordinates are decided by the observed zero-row
    frequencies, which are recorded for every coordinate.

    Parameters
    ----------
    config : ProcessConfig | GossipProcess
        The process.
    trials : int, optional
        Number of Monte Carlo trajectories, by default 10.
    horizon : int, optional
        Length of every trajectory, by default 1000.

    Returns
    -------
    NodeClassification
        The split with its evidence.

    Warns
    -----
    UserWarning
        If drop_rate = 1: buffers then never empty and are reported as real,
        although the process is degenerate.

    Examples
    --------
    >>> from pushex.process.generators import bidirectional_pair
    >>> config = ProcessConfig(bidirectional_pair(), drop_rate=0.5)
    >>> classify_nodes(config, trials=1, horizon=20).virtual_nodes
    [2, 3]
    """
    process = config if isinstance(config, GossipProcess) else GossipProcess(config)
    structure = process.row_structure()
    frequencies = zero_row_frequencies(
        process, trials, horizon, process.config.seed, progress=progress
    )
    if process.config.drop_rate >= 1.0:
        warnings.warn(
            "drop_rate = 1: no packet is ever delivered, buffer rows never "
            "become zero and are classified as real; the process is degenerate.",
            UserWarning,
            stacklevel=2,
        )

    real = structure.diagonal_always_positive
    virtual = structure.zero_row_probability > 0
    kinds = []
    for is_real, is_virtual, frequency in zip(
        real.tolist(), virtual.tolist(), frequencies.tolist()
    ):
        if is_real:
            kinds.append(NodeKind.REAL)
        elif is_virtual or frequency > 0:
            kinds.append(NodeKind.VIRTUAL)
        else:
            kinds.append(NodeKind.REAL)
    return NodeClassification(
        kinds=tuple(kinds),
        structural=real | virtual,
        zero_row_frequency=frequencies,
        trials=trials,
        horizon=horizon,
    )
