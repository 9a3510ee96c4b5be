from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import numpy.typing as npt
from tqdm import tqdm

from ..cones import NonNegMatrix
from ..cones.scaled_product import renormalize
from ..errors import DomainError
from ..rng import STREAM_MATRICES, make_rng
from ..typing import FloatArray, Mode, TransmitFraction
from .push_sum import ProtocolState, PushSumProtocol
from .topology import NetworkTopology


@dataclass(frozen=True)
class ConsensusTrajectory:
    """
    Per-step error records of one push-sum run.

    Attributes
    ----------
    target : float
        The consensus value 𝟙ᵀx₀/𝟙ᵀw₀.
    max_ratio_error : list[float | None]
        max over defined real-node ratios of |xᵢ/wᵢ − target| after every
        step; None when no ratio is defined.
    tv_distance : list[float | None]
        ‖x/𝟙ᵀx − w/𝟙ᵀw‖_TV after every step; None when x is not a
        nonnegative nonzero vector.
    final_state : ProtocolState
        The state after the last step.
    final_ratios : list[float | None]
        Real-node ratios of the final state.
    """

    target: float
    max_ratio_error: list[Optional[float]] = field(repr=False)
    tv_distance: list[Optional[float]] = field(repr=False)
    final_state: ProtocolState = field(repr=False)
    final_ratios: list[Optional[float]] = field(repr=False)

    @property
    def n_steps(self) -> int:
        return len(self.max_ratio_error)


def max_ratio_error(
    protocol: PushSumProtocol,
    state: ProtocolState,
    target: float,
) -> Optional[float]:
    """Returns the largest |xᵢ/wᵢ − target| over defined real-node ratios."""
    errors = [abs(r - target) for r in protocol.ratios(state) if r is not None]
    return max(errors) if errors else None


def tv_between_normalized(state: ProtocolState) -> Optional[float]:
    """Returns ‖x̄ − w̄‖_TV, or None when x has a negative entry or sums to 0."""
    if np.any(state.x < 0):
        return None
    total_x = float(state.x.sum())
    if total_x == 0:
        return None
    return 0.5 * float(np.abs(state.x / total_x - state.w / state.w.sum()).sum())


def run_consensus(
    topology: NetworkTopology,
    x0: npt.ArrayLike,
    w0: npt.ArrayLike,
    n_steps: int,
    seed: int,
    drop_rate: float = 0.0,
    s: TransmitFraction | npt.ArrayLike = "classic",
    mode: Mode = "sync",
    progress: bool = False,
) -> ConsensusTrajectory:
    """
    Runs the push-sum protocol and records the consensus error at every step.

    Parameters
    ----------
    topology : NetworkTopology
        The network.
    x0 : ArrayLike
        Initial values, per real node or per augmented coordinate.
    w0 : ArrayLike
        Initial weights: nonnegative, nonzero on real nodes, zero on buffers.
    n_steps : int
        Number of protocol steps.
    seed : int
        Experiment seed; the drop events use the matrix stream.
    drop_rate : float, optional
        Per-edge drop probability, by default 0.
    s : float | "classic" | ArrayLike, optional
        Transmit fraction(s), by default "classic".
    mode : {"sync", "async"}, optional
        Protocol mode, by default "sync".
    progress : bool, optional
        Whether to show a progress bar.

    Returns
    -------
    ConsensusTrajectory
        The recorded errors and the final state.

    Examples
    --------
    >>> topology = NetworkTopology(2, [[1], [0]])
    >>> run = run_consensus(topology, [1.0, 3.0], [1.0, 1.0], 10, seed=0)
    >>> run.target
    2.0
    """
    if n_steps < 0:
        raise DomainError(f"n_steps ({n_steps}) must be nonnegative.")
    if not 0 <= drop_rate <= 1:
        raise DomainError(f"drop_rate ({drop_rate}) must be in [0, 1].")
    protocol = PushSumProtocol(topology, s=s, mode=mode)
    state = protocol.initial_state(x0, w0)
    if not np.any(state.w[: topology.p] > 0):
        raise DomainError("w0 must be positive on at least one real node.")
    target = float(state.x.sum() / state.w.sum())
    rng = make_rng(seed, STREAM_MATRICES)

    errors: list[Optional[float]] = []
    distances: list[Optional[float]] = []
    for _ in tqdm(range(n_steps), disable=not progress, desc="consensus"):
        outcome = protocol.sample_outcome(rng, drop_rate)
        state = protocol.step(state, outcome)
        errors.append(max_ratio_error(protocol, state, target))
        distances.append(tv_between_normalized(state))

    return ConsensusTrajectory(
        target=target,
        max_ratio_error=errors,
        tv_distance=distances,
        final_state=state,
        final_ratios=protocol.ratios(state),
    )


class ConsensusErrorTracker:
    """
    Tracks the consensus error e = x − (𝟙ᵀx/𝟙ᵀw)·w of a trajectory with its own
    binary scale.

    e evolves by the same matrices as x and w and keeps 𝟙ᵀe = 0. Carrying it
    separately keeps log errors resolvable long after x/w agrees with the
    target to machine precision.

    Parameters
    ----------
    x0, w0 : ArrayLike
        Initial values and weights over the augmented coordinates.
    p_real : int
        Number of real nodes.
    """

    def __init__(self, x0: npt.ArrayLike, w0: npt.ArrayLike, p_real: int):
        x = np.array(x0, dtype=np.float64)
        w = np.array(w0, dtype=np.float64)
        total_w = float(w.sum())
        if total_w <= 0:
            raise DomainError("w0 must have a positive entry.")
        self.p_real = p_real
        self.total_x = float(x.sum())
        self.target = self.total_x / total_w
        self.tracks_tv = bool(np.all(x >= 0)) and self.total_x > 0
        self._w = w
        self._exponent = 0
        error = x - self.target * w
        self._exact = not np.any(error)
        self._error = error
        if not self._exact:
            self._error, self._exponent = renormalize(error)

    @property
    def log_scale(self) -> float:
        return self._exponent * math.log(2.0)

    @property
    def weights(self) -> FloatArray:
        return self._w

    def advance(self, A: NonNegMatrix):
        """Applies one transition matrix."""
        self._w = A.entries @ self._w
        if self._exact:
            return
        error = A.entries @ self._error
        error -= error.sum() * self._w / self._w.sum()
        if not np.any(error):
            self._exact = True
            self._error = error
            return
        error, shift = renormalize(error)
        self._error = error
        self._exponent += shift

    def log_ratio_error(self) -> float:
        """Returns log max |xᵢ/wᵢ − target| over real nodes with wᵢ > 0."""
        if self._exact:
            return -math.inf
        w = self._w[: self.p_real]
        defined = w > 0
        if not np.any(defined):
            return math.nan
        peak = float(np.max(np.abs(self._error[: self.p_real][defined]) / w[defined]))
        if peak == 0:
            return -math.inf
        return self.log_scale + math.log(peak)

    def log_tv_distance(self) -> float:
        """Returns log ‖x/𝟙ᵀx − w/𝟙ᵀw‖_TV, or NaN when x is not nonnegative."""
        if not self.tracks_tv:
            return math.nan
        if self._exact:
            return -math.inf
        half_l1 = 0.5 * float(np.abs(self._error).sum())
        return self.log_scale + math.log(half_l1) - math.log(abs(self.total_x))
