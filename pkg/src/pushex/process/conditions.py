from __future__ import annotations

from typing import Optional

import numpy as np
from pydantic.dataclasses import dataclass

from ..errors import DomainError
from ..model import Model
from ..primitivity.primitivity import sample_primitivity_times
from ..rng import STREAM_MATRICES, make_rng
from .gossip_process import GossipProcess, ProcessConfig


@dataclass
class ConditionReport(Model):
    """
    Evidence for the boundedness and primitivity conditions of a process.

    Attributes
    ----------
    alpha_min : float
        Smallest positive entry over the range (or the samples).
    beta_max : float
        Largest entry over the range (or the samples).
    finite_range : bool
        Whether the process has a finite range. Always true for gossip
        processes, whose matrices are indexed by finitely many drop patterns.
    bounded_condition : bool
        Whether 0 < α ≤ αₙ ≤ βₙ ≤ β holds for all n.
    exact : bool
        Whether α and β come from the enumerated range rather than samples.
    n_samples : int
        Number of sampled matrices, 0 when exact.
    range_size : int, optional
        Number of distinct matrices when enumerated.
    psi_expectation_estimate : float, optional
        Mean ψ over the trials that reached weak primitivity; None if none did.
    psi_reached : int
        Number of trials that reached weak primitivity within the horizon.
    psi_trials : int
        Number of ψ trials.
    psi_horizon : int
        Largest window length tried.
    """

    alpha_min: float
    beta_max: float
    finite_range: bool
    bounded_condition: bool
    exact: bool
    n_samples: int
    range_size: Optional[int]
    psi_expectation_estimate: Optional[float]
    psi_reached: int
    psi_trials: int
    psi_horizon: int


def verify_conditions(
    config: ProcessConfig,
    n_samples: int = 1000,
    seed: Optional[int] = None,
    psi_trials: int = 100,
    psi_horizon: int = 1000,
    progress: bool = False,
) -> ConditionReport:
    """
    Checks the sufficient conditions of the rate bounds for a gossip process.

    When the range can be enumerated, α and β are exact and the boundedness
    condition is proven; otherwise they are taken over `n_samples` sampled
    matrices. E[ψ] is estimated by Monte Carlo.

    Parameters
    ----------
    config : ProcessConfig
        The process.
    n_samples : int, optional
        Sample count when the range is too large, by default 1000.
    seed : int, optional
        Seed of the sampling streams, by default `config.seed`.
    psi_trials : int, optional
        Number of ψ trials, by default 100.
    psi_horizon : int, optional
        Largest ψ window, by default 1000.

    Returns
    -------
    ConditionReport
        The collected evidence.

    Examples
    --------
    >>> from pushex.process.generators import bidirectional_pair
    >>> config = ProcessConfig(bidirectional_pair(), drop_rate=0.5, s=0.5)
    >>> report = verify_conditions(config, psi_trials=5, psi_horizon=50)
    >>> report.alpha_min, report.beta_max
    (0.5, 1.0)
    """
    if n_samples < 1:
        raise DomainError(f"n_samples ({n_samples}) must be at least 1.")
    seed = config.seed if seed is None else seed
    process = GossipProcess(config)

    elements = process.finite_range()
    if elements is not None:
        alpha = min(element.matrix.alpha for element in elements)
        beta = max(element.matrix.beta for element in elements)
        sampled = 0
        range_size: Optional[int] = len(elements)
    else:
        rng = make_rng(seed, STREAM_MATRICES)
        alpha, beta = np.inf, 0.0
        for _ in range(n_samples):
            matrix = process.sample(rng)
            alpha = min(alpha, matrix.alpha)
            beta = max(beta, matrix.beta)
        sampled = n_samples
        range_size = None

    psi_samples = sample_primitivity_times(
        process, psi_trials, psi_horizon, seed, progress=progress
    )
    reached = [psi for psi in psi_samples if psi is not None]
    return ConditionReport(
        alpha_min=float(alpha),
        beta_max=float(beta),
        finite_range=True,
        bounded_condition=bool(0 < alpha <= beta < np.inf),
        exact=elements is not None,
        n_samples=sampled,
        range_size=range_size,
        psi_expectation_estimate=float(np.mean(reached)) if reached else None,
        psi_reached=len(reached),
        psi_trials=psi_trials,
        psi_horizon=psi_horizon,
    )
