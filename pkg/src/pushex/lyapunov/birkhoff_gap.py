from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Final, Optional

import numpy as np
from tqdm import tqdm

from ..analysis.fitting import fit_line
from ..cones import NonNegMatrix, ScaledProduct, log_tau, multiply_accumulate
from ..cones.birkhoff import LINEAR_TANH_LOG_PHI, column_oscillation, log_tau_from_log_phi
from ..cones.scaled_product import LN2, changed_columns, left_multiply, renormalize
from ..errors import DomainError, EstimatorError, NotPrimitiveError
from ..process.matrix_process import ProcessLike, matrix_stream
from ..typing import FloatArray, IntArray

DEFAULT_SAMPLE_POINTS: Final = 200
MIN_FIT_POINTS: Final = 3


class BirkhoffTracker:
    """
    Tracks log τ(Mₙ) for the running product Mₙ = Aₙ···A₁.

    Besides the scaled product, the column differences D = Mₙ(eⱼ − tⱼe₀) are
    carried with their own binary exponent. On the positive rows,
    Mₙ^{kj}/Mₙ^{k0} = tⱼ(1 + Dᵏʲ/(tⱼMₙ^{k0})), so the oscillation that defines
    φ(Mₙ) is read off D without cancellation, and log τ(Mₙ) stays resolvable
    long after τ(Mₙ) underflows. The offsets tⱼ are recentered every step so
    that D keeps no component along the dominant direction.

    Parameters
    ----------
    dim : int
        Matrix dimension.
    """

    def __init__(self, dim: int):
        if dim < 2:
            raise DomainError(f"dim ({dim}) must be at least 2.")
        self.product = ScaledProduct.identity(dim)
        differences = np.zeros((dim, dim))
        differences[0, 1:] = -1.0
        differences[np.arange(1, dim), np.arange(1, dim)] = 1.0
        self._differences = differences
        self._difference_exponent = 0
        self._offsets = np.ones(dim)
        self._exact = False

    @property
    def steps(self) -> int:
        return self.product.steps

    def update(self, A: NonNegMatrix, columns: Optional[IntArray] = None):
        if columns is None:
            columns = changed_columns(A.entries)
        self.product = multiply_accumulate(self.product, A, columns)
        if self._exact:
            return
        differences = left_multiply(A.entries, self._differences, columns)
        if not np.any(differences):
            self._exact = True
            return
        self._differences, shift = renormalize(differences)
        self._difference_exponent += shift
        self._recenter()

    def _ratios(self) -> tuple[FloatArray, float]:
        """Returns R on the usable positive rows and the log scale gap s."""
        product = self.product
        rows = product.positive_rows & (product.numeric[:, 0] > 0)
        reference = product.numeric[rows, 0][:, None]
        ratios = self._differences[rows] / (self._offsets * reference)
        ratios[:, 0] = 0.0
        log_gap = (self._difference_exponent - product.exponent) * LN2
        return ratios, log_gap

    def _recenter(self):
        product = self.product
        if not np.any(product.positive_rows):
            return
        ratios, log_gap = self._ratios()
        if ratios.shape[0] == 0:
            return
        centers = 0.5 * (ratios.max(axis=0) + ratios.min(axis=0))
        centers[0] = 0.0
        factors = 1.0 + np.exp(log_gap) * centers
        usable = (factors > 0) & np.isfinite(factors)
        centers = np.where(usable, centers, 0.0)
        correction = np.outer(product.numeric[:, 0], centers * self._offsets)
        self._differences = self._differences - correction
        self._offsets = np.where(usable, self._offsets * factors, self._offsets)
        if np.any(self._differences):
            self._differences, shift = renormalize(self._differences)
            self._difference_exponent += shift
        else:
            self._exact = True

    def log_tau(self) -> float:
        """
        Returns log τ(Mₙ): 0 when a row of Mₙ is mixed, −∞ when the positive
        part has rank one.
        """
        product = self.product
        if not product.is_weakly_primitive:
            return 0.0
        if self._exact:
            return -math.inf
        ratios, log_gap = self._ratios()
        peak = float(np.abs(ratios).max()) if ratios.size else 0.0
        if peak == 0:
            return -math.inf
        if log_gap + math.log(peak) < LINEAR_TANH_LOG_PHI:
            oscillation = column_oscillation(ratios)
            if oscillation == 0:
                return -math.inf
            return log_tau_from_log_phi(log_gap + math.log(oscillation))
        logs = np.log1p(np.exp(log_gap) * ratios)
        value = column_oscillation(logs)
        if value == 0:
            return -math.inf
        return log_tau_from_log_phi(math.log(value))


@dataclass(frozen=True)
class BirkhoffGapEstimate:
    """
    Result of the Birkhoff-slope gap estimator.

    Attributes
    ----------
    gap : float
        −slope of log τ(Mₙ) over the final half of the sample points; +∞ when
        τ(Mₙ) reached 0.
    sample_steps : list[int]
        The steps n at which log τ(Mₙ) was recorded.
    log_tau : list[float]
        The recorded log τ(Mₙ).
    first_contracting_step : int, optional
        First sampled step with τ(Mₙ) < 1.
    """

    gap: float
    sample_steps: list[int] = field(repr=False)
    log_tau: list[float] = field(repr=False)
    first_contracting_step: Optional[int]

    @property
    def final_rate(self) -> float:
        """−(1/n) log τ(Mₙ) at the last sample point."""
        return -self.log_tau[-1] / self.sample_steps[-1]


class BirkhoffGapEstimator:
    """
    Incremental Birkhoff gap estimator over a shared matrix stream.

    Parameters
    ----------
    dim : int
        Matrix dimension.
    n_steps : int
        Planned number of factors.
    sample_points : int, optional
        Number of evenly spaced steps at which log τ(Mₙ) is recorded.
    """

    def __init__(
        self,
        dim: int,
        n_steps: int,
        sample_points: int = DEFAULT_SAMPLE_POINTS,
    ):
        if n_steps < 1:
            raise DomainError(f"n_steps ({n_steps}) must be positive.")
        if sample_points < 2 * MIN_FIT_POINTS:
            raise DomainError(
                f"sample_points ({sample_points}) must be at least {2 * MIN_FIT_POINTS}."
            )
        self.tracker = BirkhoffTracker(dim)
        points = np.linspace(0, n_steps, sample_points + 1)[1:]
        self._sample_steps = sorted({max(1, int(round(point))) for point in points})
        self._pending = set(self._sample_steps)
        self._log_tau: dict[int, float] = {}

    def update(self, A: NonNegMatrix, columns: Optional[IntArray] = None):
        self.tracker.update(A, columns)
        steps = self.tracker.steps
        if steps in self._pending:
            self._log_tau[steps] = self.tracker.log_tau()

    def estimate(self) -> BirkhoffGapEstimate:
        """
        Fits log τ(Mₙ) against n over the final half of the recorded points.

        Raises
        ------
        NotPrimitiveError
            If τ(Mₙ) = 1 at every sample point.
        EstimatorError
            If too few contracting points remain for the fit.
        """
        steps = [n for n in self._sample_steps if n in self._log_tau]
        values = [self._log_tau[n] for n in steps]
        contracting = [n for n, value in zip(steps, values) if value < 0]
        if not contracting:
            raise NotPrimitiveError(
                f"τ(Mₙ) = 1 for every sampled n ≤ {self.tracker.steps}; "
                "the product is not weakly primitive within the horizon."
            )
        first = contracting[0]
        if values[-1] == -math.inf:
            return BirkhoffGapEstimate(math.inf, steps, values, first)
        half = steps[len(steps) // 2 :]
        points = [
            (n, self._log_tau[n])
            for n in half
            if n >= first and math.isfinite(self._log_tau[n])
        ]
        if len(points) < MIN_FIT_POINTS:
            raise EstimatorError(
                f"Only {len(points)} contracting sample points in the final half."
            )
        slope, _ = fit_line([n for n, _ in points], [value for _, value in points])
        return BirkhoffGapEstimate(-slope, steps, values, first)


def birkhoff_gap_estimate(
    process: ProcessLike,
    n_steps: int,
    seed: int,
    sample_points: int = DEFAULT_SAMPLE_POINTS,
    progress: bool = False,
) -> float:
    """
    Estimates λ₁ − λ₂ as the slope of −log τ(Mₙ).

    Parameters
    ----------
    process : MatrixProcess | NonNegMatrix | ArrayLike | Iterable[NonNegMatrix]
        The matrix process.
    n_steps : int
        Number of factors.
    seed : int
        Seed of the matrix stream.
    sample_points : int, optional
        Number of steps at which log τ(Mₙ) is recorded, by default 200.

    Returns
    -------
    float
        The gap estimate.

    Raises
    ------
    NotPrimitiveError
        If τ(Mₙ) stays 1 up to the horizon.

    Examples
    --------
    >>> A = [[0.75, 0.25], [0.25, 0.75]]
    >>> round(birkhoff_gap_estimate(A, 1000, seed=0), 6) == round(math.log(2.0), 6)
    True
    """
    stream = matrix_stream(process, seed, n_steps)
    first, columns = next(stream)
    estimator = BirkhoffGapEstimator(first.dim, n_steps, sample_points)
    estimator.update(first, columns)
    for matrix, columns in tqdm(
        stream, total=n_steps - 1, disable=not progress, desc="birkhoff"
    ):
        estimator.update(matrix, columns)
    return estimator.estimate().gap


@dataclass(frozen=True)
class MeanLogTau:
    """
    Monte Carlo estimate of E log τ(A₁); −mean lower-bounds the gap.

    Attributes
    ----------
    mean : float
        Sample mean of log τ(Aₖ); −∞ if some sampled τ is 0.
    standard_error : float
        Standard error of the mean (0 for a single sample).
    n_samples : int
        Number of sampled matrices.
    trivial : bool
        Whether the mean is 0, i.e. single steps do not contract and the bound
        says nothing.
    """

    mean: float
    standard_error: float
    n_samples: int
    trivial: bool

    @property
    def gap_lower_bound(self) -> float:
        return -self.mean


def mean_log_tau(process: ProcessLike, n_samples: int, seed: int) -> MeanLogTau:
    """
    Returns the Monte Carlo mean of log τ(Aₖ) over sampled one-step matrices.

    Examples
    --------
    >>> result = mean_log_tau([[2.0, 1.0], [1.0, 2.0]], 10, seed=0)
    >>> round(result.mean, 12) == round(math.log(1 / 3), 12)
    True
    """
    if n_samples < 1:
        raise DomainError(f"n_samples ({n_samples}) must be positive.")
    stream = matrix_stream(process, seed, n_samples)
    values = np.array([log_tau(matrix) for matrix, _ in stream])
    if np.any(np.isneginf(values)):
        mean, error = -math.inf, 0.0
    else:
        mean = float(values.mean())
        error = 0.0
        if n_samples > 1:
            error = float(values.std(ddof=1) / math.sqrt(n_samples))
    return MeanLogTau(
        mean=mean,
        standard_error=error,
        n_samples=n_samples,
        trivial=mean == 0.0,
    )
