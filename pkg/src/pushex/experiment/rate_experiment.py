from __future__ import annotations

import itertools
import math
from typing import Final, Literal, Optional

from pydantic.dataclasses import dataclass
from rich.console import Console
from tqdm import tqdm

from ..analysis.fitting import fit_slope
from ..cones import ScaledProduct, multiply_accumulate
from ..errors import (
    ConfigError,
    DegenerateProcessError,
    DomainError,
    EstimatorError,
    NotPrimitiveError,
)
from ..lyapunov import (
    BirkhoffGapEstimator,
    LyapunovEstimate,
    QrEstimator,
    estimate_sum_top2_via_compound,
    first_order_approx,
    mean_log_tau,
    subexponential_witness,
)
from ..model import Model
from ..protocol import ConsensusErrorTracker
from .experiment_config import MIN_RATE_STEPS, ExperimentConfig

console = Console(stderr=True)

MEAN_LOG_TAU_SAMPLES: Final = 200
BURN_IN_FRACTION: Final = 0.1

BirkhoffStatus = Literal["ok", "infinite", "not_primitive", "failed", "skipped"]


@dataclass
class RateDiagnostics(Model):
    """
    Side results of a rate experiment.

    Attributes
    ----------
    burn_in : int
        Steps excluded from the slope fits: max(τ, 10% of the horizon).
    primitivity_time : int, optional
        First n at which Mₙ was weakly primitive; None if never.
    qr : LyapunovEstimate, optional
        Full QR estimate with windows and rank-deficiency count.
    gap_birkhoff_status : str
        "ok", "infinite" (τ(Mₙ) hit 0), "not_primitive", "failed" or "skipped".
    first_contracting_step : int, optional
        First sampled n with τ(Mₙ) < 1.
    mean_log_tau : float, optional
        Monte Carlo E log τ(A₁); −mean_log_tau lower-bounds the gap.
    mean_log_tau_standard_error : float, optional
    compound_sum : float, optional
        λ₁ + λ₂ from the compound iteration.
    target : float
        Exact consensus value 𝟙ᵀx₀/𝟙ᵀw₀.
    first_order_target : float, optional
        v¹x₀/v¹w₀ from the rank-one approximation of the final product.
    subexponential_witness : float, optional
        (1/n) max log ratio of positive entries in a column of Mₙ.
    final_log_ratio_error : float, optional
        log max |xᵢ/wᵢ − target| after the last step.
    """

    burn_in: int
    primitivity_time: Optional[int]
    qr: Optional[LyapunovEstimate]
    gap_birkhoff_status: BirkhoffStatus
    first_contracting_step: Optional[int]
    mean_log_tau: Optional[float]
    mean_log_tau_standard_error: Optional[float]
    compound_sum: Optional[float]
    target: float
    first_order_target: Optional[float]
    subexponential_witness: Optional[float]
    final_log_ratio_error: Optional[float]


@dataclass
class RateReport(Model):
    """
    Cross-validated convergence-rate estimates of one experiment.

    Attributes
    ----------
    gap_qr : float, optional
        λ̂₁ − λ̂₂ from the QR estimator.
    gap_birkhoff : float, optional
        Slope of −log τ(Mₙ). None unless diagnostics.gap_birkhoff_status is
        "ok"; "infinite" means τ(Mₙ) reached 0, so the gap is unbounded.
    slope_tv : float, optional
        Slope of log ‖x̄ₙ − w̄ₙ‖_TV; None when x₀ is not nonnegative.
    slope_ratio_error : float, optional
        Slope of log max |xᵢ/wᵢ − target|.
    lambda1, lambda2 : float, optional
        QR exponents; lambda2 is None when it is −∞.
    agreement : dict[str, float]
        Pairwise relative differences between the available gap magnitudes.
    diagnostics : RateDiagnostics
        Burn-in, windows and auxiliary estimates.
    config : ExperimentConfig
        The experiment that was run.
    """

    gap_qr: Optional[float]
    gap_birkhoff: Optional[float]
    slope_tv: Optional[float]
    slope_ratio_error: Optional[float]
    lambda1: Optional[float]
    lambda2: Optional[float]
    agreement: dict[str, float]
    diagnostics: RateDiagnostics
    config: ExperimentConfig


def relative_difference(a: float, b: float) -> float:
    """Returns |a − b| / max(|a|, |b|), 0 when both vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


def gap_agreement(gaps: dict[str, Optional[float]]) -> dict[str, float]:
    """
    Returns the relative differences between every pair of finite gap
    magnitudes, keyed "a~b".
    """
    finite = {
        name: abs(value)
        for name, value in gaps.items()
        if value is not None and math.isfinite(value)
    }
    return {
        f"{a}~{b}": relative_difference(finite[a], finite[b])
        for a, b in itertools.combinations(finite, 2)
    }


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def run_rate_experiment(
    config: ExperimentConfig,
    progress: bool = False,
) -> RateReport:
    """
    Runs one trajectory and estimates its convergence rate three ways.

    A single matrix stream drives the QR estimator, the Birkhoff tracker and
    the consensus error, so that all estimates refer to the same sample path.

    Parameters
    ----------
    config : ExperimentConfig
        The experiment.
    progress : bool, optional
        Whether to show a progress bar.

    Returns
    -------
    RateReport
        The estimates and their diagnostics.

    Raises
    ------
    DegenerateProcessError
        If drop_rate = 1.
    ConfigError
        If the configuration cannot be realized.
    """
    if config.drop_rate >= 1.0:
        raise DegenerateProcessError(
            "degenerate process: with drop_rate = 1 no packet is ever delivered "
            "and the ratios never reach consensus."
        )
    if config.steps < MIN_RATE_STEPS:
        raise ConfigError(
            f"steps ({config.steps}) must be at least {MIN_RATE_STEPS} for rate estimates."
        )
    estimators = set(config.estimators)
    process = config.build_process()
    protocol = process.protocol
    p, dim, n_steps = protocol.p, protocol.dim, config.steps

    x0, w0 = config.initial_vectors(p)
    try:
        state = protocol.initial_state(x0, w0)
        tracker = ConsensusErrorTracker(state.x, state.w, p)
    except DomainError as e:
        raise ConfigError(str(e)) from e

    qr = QrEstimator(dim, n_steps, seed=config.seed) if "qr" in estimators else None
    birkhoff = (
        BirkhoffGapEstimator(dim, n_steps) if "birkhoff" in estimators else None
    )
    empirical = "empirical" in estimators
    product = ScaledProduct.identity(dim)
    primitivity_time: Optional[int] = None
    tv_series: list[tuple[int, float]] = []
    ratio_series: list[tuple[int, float]] = []

    stream = process.stream_with_columns(config.seed, n_steps)
    for n, (matrix, columns) in enumerate(
        tqdm(stream, total=n_steps, disable=not progress, desc="rates"), start=1
    ):
        if qr is not None:
            qr.update(matrix, columns)
        if birkhoff is not None:
            birkhoff.update(matrix, columns)
            product = birkhoff.tracker.product
        else:
            product = multiply_accumulate(product, matrix, columns)
        if primitivity_time is None and product.is_weakly_primitive:
            primitivity_time = n
        if empirical:
            tracker.advance(matrix)
            tv_series.append((n, tracker.log_tv_distance()))
            ratio_series.append((n, tracker.log_ratio_error()))

    burn_in = max(primitivity_time or 0, int(BURN_IN_FRACTION * n_steps))

    estimate = qr.estimate() if qr is not None else None
    gap_birkhoff: Optional[float] = None
    status: BirkhoffStatus = "skipped"
    first_contracting: Optional[int] = None
    if birkhoff is not None:
        try:
            result = birkhoff.estimate()
        except NotPrimitiveError:
            status = "not_primitive"
        except EstimatorError as e:
            status = "failed"
            console.print(f"[yellow]birkhoff gap estimate failed: {e}[/yellow]")
        else:
            gap_birkhoff = result.gap
            first_contracting = result.first_contracting_step
            status = "ok" if math.isfinite(result.gap) else "infinite"

    slope_tv = slope_ratio = None
    if empirical:
        if tracker.tracks_tv:
            slope_tv = _fit_or_none(tv_series, burn_in, "total variation")
        slope_ratio = _fit_or_none(ratio_series, burn_in, "ratio error")

    compound_sum: Optional[float] = None
    if "compound" in estimators:
        try:
            compound_sum = estimate_sum_top2_via_compound(process, n_steps, config.seed)
        except (DomainError, EstimatorError) as e:
            console.print(f"[yellow]compound check skipped: {e}[/yellow]")

    bound = mean_log_tau(process, min(MEAN_LOG_TAU_SAMPLES, n_steps), config.seed)
    try:
        first_order_target: Optional[float] = first_order_approx(product).target(
            state.x, state.w
        )
    except DomainError:
        first_order_target = None

    gap_qr = estimate.gap if estimate is not None else None
    gaps = {
        "qr": gap_qr,
        "birkhoff": gap_birkhoff,
        "tv": slope_tv,
        "ratio": slope_ratio,
    }
    diagnostics = RateDiagnostics(
        burn_in=burn_in,
        primitivity_time=primitivity_time,
        qr=estimate,
        gap_birkhoff_status=status,
        first_contracting_step=first_contracting,
        mean_log_tau=_finite_or_none(bound.mean),
        mean_log_tau_standard_error=bound.standard_error,
        compound_sum=compound_sum,
        target=tracker.target,
        first_order_target=first_order_target,
        subexponential_witness=subexponential_witness(product),
        final_log_ratio_error=(
            _finite_or_none(ratio_series[-1][1]) if ratio_series else None
        ),
    )
    return RateReport(
        gap_qr=gap_qr,
        gap_birkhoff=gap_birkhoff if status == "ok" else None,
        slope_tv=slope_tv,
        slope_ratio_error=slope_ratio,
        lambda1=estimate.lambda1 if estimate is not None else None,
        lambda2=estimate.lambda2 if estimate is not None else None,
        agreement=gap_agreement(gaps),
        diagnostics=diagnostics,
        config=config,
    )


def _fit_or_none(
    series: list[tuple[int, float]],
    burn_in: int,
    name: str,
) -> Optional[float]:
    try:
        return fit_slope(series, burn_in_fraction=BURN_IN_FRACTION, burn_in=burn_in)
    except EstimatorError as e:
        console.print(f"[yellow]{name} slope unavailable: {e}[/yellow]")
        return None
