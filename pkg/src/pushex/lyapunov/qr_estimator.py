from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Final, Literal, Optional

import numpy as np
from pydantic.dataclasses import dataclass as model_dataclass
from tqdm import tqdm

from ..cones import NonNegMatrix
from ..cones.scaled_product import left_multiply
from ..errors import DomainError, EstimatorError
from ..model import Model
from ..process.matrix_process import ProcessLike, matrix_stream
from ..rng import STREAM_ESTIMATOR, make_rng
from ..typing import FloatArray, IntArray

R_DIAGONAL_FLOOR: Final = 1e-300
LOG_R_DIAGONAL_FLOOR: Final = math.log(R_DIAGONAL_FLOOR)
MIN_STEPS: Final = 100
N_WINDOWS: Final = 10
DEFAULT_TOLERANCE: Final = 1e-2

InitialFrame = Literal["random", "axes"]


@dataclass(frozen=True)
class QrEstimatorState:
    """
    State of the QR (Benettin) iteration for the top two exponents.

    Attributes
    ----------
    frame : FloatArray
        dim×2 matrix with orthonormal columns.
    log_sums : FloatArray
        Cumulative Σ log Rᵢᵢ for both columns.
    steps : int
        Number of factors applied.
    rank_deficient_steps : int
        Number of steps with an R diagonal entry below the floor.
    """

    frame: FloatArray = field(repr=False)
    log_sums: FloatArray
    steps: int = 0
    rank_deficient_steps: int = 0

    def __post_init__(self):
        self.frame.setflags(write=False)
        self.log_sums.setflags(write=False)

    @classmethod
    def initial(
        cls,
        dim: int,
        rng: Optional[np.random.Generator] = None,
        frame: InitialFrame = "random",
    ) -> QrEstimatorState:
        """
        Creates the starting state.

        Parameters
        ----------
        dim : int
            Matrix dimension, at least 2.
        rng : np.random.Generator, optional
            Source of the random frame.
        frame : {"random", "axes"}, optional
            A Gaussian orthonormalized frame, or the first two coordinate axes.
        """
        if dim < 2:
            raise DomainError(f"dim ({dim}) must be at least 2.")
        if frame == "axes":
            start = np.eye(dim, 2)
        elif frame == "random":
            rng = rng if rng is not None else np.random.default_rng()
            start, _ = np.linalg.qr(rng.standard_normal((dim, 2)))
        else:
            raise DomainError(f"Unknown initial frame '{frame}'.")
        return cls(frame=np.array(start), log_sums=np.zeros(2))


def qr_step(
    state: QrEstimatorState,
    A: NonNegMatrix,
    columns: Optional[IntArray] = None,
) -> QrEstimatorState:
    """
    Applies one factor: QR-decomposes A·frame and accumulates log Rᵢᵢ.

    Parameters
    ----------
    state : QrEstimatorState
        The current state.
    A : NonNegMatrix
        The next factor.
    columns : IntArray, optional
        Columns of A that differ from the identity, if known.

    Raises
    ------
    EstimatorError
        If A·frame is identically zero.

    Examples
    --------
    >>> state = QrEstimatorState.initial(3, frame="axes")
    >>> state = qr_step(state, NonNegMatrix(np.diag([2.0, 1.0, 1.0])))
    >>> state.log_sums.tolist() == [math.log(2.0), 0.0]
    True
    """
    if A.dim != state.frame.shape[0]:
        raise DomainError(f"Dimension mismatch ({A.dim} != {state.frame.shape[0]}).")
    image = left_multiply(A.entries, state.frame, columns)
    if not np.any(image):
        raise EstimatorError("A·frame vanished; the factor is not column-allowable.")
    Q, R = np.linalg.qr(image)
    diagonal = np.diag(R)
    signs = np.where(diagonal < 0, -1.0, 1.0)
    Q = Q * signs
    magnitudes = np.abs(diagonal)
    deficient = magnitudes < R_DIAGONAL_FLOOR
    logs = np.log(np.maximum(magnitudes, R_DIAGONAL_FLOOR))
    return QrEstimatorState(
        frame=Q,
        log_sums=state.log_sums + logs,
        steps=state.steps + 1,
        rank_deficient_steps=state.rank_deficient_steps + int(deficient.any()),
    )


@model_dataclass
class WindowEstimate(Model):
    """Exponents estimated over the steps between the burn-in and `end`."""

    end: int
    lambda1: float
    lambda2: Optional[float]


@model_dataclass
class LyapunovEstimate(Model):
    """
    Estimated top two Lyapunov exponents.

    Attributes
    ----------
    lambda1 : float
        Per-step log growth of the top direction.
    lambda2 : float, optional
        Second exponent; None when it is −∞.
    lambda2_is_minus_infinity : bool
        Whether more than half of the steps were rank deficient.
    gap : float, optional
        λ₁ − λ₂; None when λ₂ = −∞.
    steps : int
        Number of factors.
    burn_in : int
        Steps excluded from the windowed diagnostics.
    windowed_estimates : list[WindowEstimate]
        Estimates over growing windows after the burn-in.
    rank_deficient_steps : int
        Steps whose R diagonal hit the floor.
    stabilized : bool
        Whether the last two windows agree within `tolerance`.
    tolerance : float
        Stabilization tolerance.
    """

    lambda1: float
    lambda2: Optional[float]
    lambda2_is_minus_infinity: bool
    gap: Optional[float]
    steps: int
    burn_in: int
    windowed_estimates: list[WindowEstimate]
    rank_deficient_steps: int
    stabilized: bool
    tolerance: float


def burn_in_steps(n_steps: int) -> int:
    return max(MIN_STEPS, n_steps // 10)


class QrEstimator:
    """
    Incremental QR estimator of λ₁ and λ₂ with windowed diagnostics.

    Parameters
    ----------
    dim : int
        Matrix dimension.
    n_steps : int
        Planned number of factors; fixes the burn-in and the window ends.
    seed : int, optional
        Seed of the frame stream, by default 0.
    initial_frame : {"random", "axes"}, optional
        Starting frame, by default "random".
    tolerance : float, optional
        Stabilization tolerance of the windowed estimates.
    """

    def __init__(
        self,
        dim: int,
        n_steps: int,
        seed: int = 0,
        initial_frame: InitialFrame = "random",
        tolerance: float = DEFAULT_TOLERANCE,
    ):
        if n_steps < MIN_STEPS:
            raise DomainError(f"n_steps ({n_steps}) must be at least {MIN_STEPS}.")
        self.n_steps: Final = n_steps
        self.tolerance: Final = tolerance
        self.burn_in: Final = min(burn_in_steps(n_steps), n_steps - 1)
        ends = np.linspace(self.burn_in, n_steps, N_WINDOWS + 1)[1:]
        rounded = {int(round(end)) for end in ends}
        self._window_ends = sorted(end for end in rounded if end > self.burn_in)
        self._burn_in_sums: Optional[FloatArray] = None
        self._burn_in_deficient = 0
        self._windows: list[tuple[int, FloatArray, int]] = []
        self.state = QrEstimatorState.initial(
            dim, make_rng(seed, STREAM_ESTIMATOR), initial_frame
        )

    def update(self, A: NonNegMatrix, columns: Optional[IntArray] = None):
        self.state = qr_step(self.state, A, columns)
        steps = self.state.steps
        if steps == self.burn_in:
            self._burn_in_sums = self.state.log_sums.copy()
            self._burn_in_deficient = self.state.rank_deficient_steps
        if steps in self._window_ends and self._burn_in_sums is not None:
            self._windows.append(
                (steps, self.state.log_sums.copy(), self.state.rank_deficient_steps)
            )

    def _readout(
        self,
        sums: FloatArray,
        steps: int,
        deficient: int,
    ) -> tuple[float, Optional[float]]:
        first, second = sorted((sums / steps).tolist(), reverse=True)
        if deficient / steps > 0.5:
            return first, None
        return first, second

    def estimate(self) -> LyapunovEstimate:
        """Reads out the estimates after all updates."""
        state = self.state
        if state.steps == 0:
            raise EstimatorError("No factor has been applied.")
        lambda1, lambda2 = self._readout(
            state.log_sums, state.steps, state.rank_deficient_steps
        )
        windows = []
        if self._burn_in_sums is not None:
            for end, sums, deficient in self._windows:
                length = end - self.burn_in
                w1, w2 = self._readout(
                    sums - self._burn_in_sums,
                    length,
                    deficient - self._burn_in_deficient,
                )
                windows.append(WindowEstimate(end=end, lambda1=w1, lambda2=w2))
        return LyapunovEstimate(
            lambda1=lambda1,
            lambda2=lambda2,
            lambda2_is_minus_infinity=lambda2 is None,
            gap=None if lambda2 is None else lambda1 - lambda2,
            steps=state.steps,
            burn_in=self.burn_in,
            windowed_estimates=windows,
            rank_deficient_steps=state.rank_deficient_steps,
            stabilized=_stabilized(windows, self.tolerance),
            tolerance=self.tolerance,
        )


def _stabilized(windows: list[WindowEstimate], tolerance: float) -> bool:
    if len(windows) < 2:
        return False
    last, previous = windows[-1], windows[-2]
    if abs(last.lambda1 - previous.lambda1) > tolerance:
        return False
    if last.lambda2 is None or previous.lambda2 is None:
        return last.lambda2 is None and previous.lambda2 is None
    return abs(last.lambda2 - previous.lambda2) <= tolerance


def estimate_top2(
    process: ProcessLike,
    n_steps: int,
    seed: int,
    initial_frame: InitialFrame = "random",
    tolerance: float = DEFAULT_TOLERANCE,
    progress: bool = False,
) -> LyapunovEstimate:
    """
    Estimates the top two Lyapunov exponents by the QR method.

    Parameters
    ----------
    process : MatrixProcess | NonNegMatrix | ArrayLike | Iterable[NonNegMatrix]
        The matrix process; a single matrix is treated as a constant process.
    n_steps : int
        Number of factors, at least 100.
    seed : int
        Seed of the matrix and frame streams.
    initial_frame : {"random", "axes"}, optional
        Starting frame, by default "random".
    tolerance : float, optional
        Stabilization tolerance of the windowed estimates.

    Returns
    -------
    LyapunovEstimate
        λ̂₁ ≥ λ̂₂ with diagnostics.

    Notes
    -----
    A random frame carries a transient of order log(angle to the top
    subspace) / n, so constant diagonal factors only reproduce log|dᵢ|
    exactly with initial_frame="axes", whose columns already span the top
    two coordinates.

    Examples
    --------
    >>> estimate = estimate_top2(np.diag([2.0, 1.0]), 100, seed=0, initial_frame="axes")
    >>> round(estimate.lambda1, 12) == round(math.log(2.0), 12)
    True
    """
    if n_steps < MIN_STEPS:
        raise DomainError(f"n_steps ({n_steps}) must be at least {MIN_STEPS}.")
    stream = matrix_stream(process, seed, n_steps)
    first, columns = next(stream)
    estimator = QrEstimator(
        first.dim, n_steps, seed=seed, initial_frame=initial_frame, tolerance=tolerance
    )
    estimator.update(first, columns)
    for matrix, columns in tqdm(stream, total=n_steps - 1, disable=not progress, desc="qr"):
        estimator.update(matrix, columns)
    return estimator.estimate()
