from __future__ import annotations

import itertools
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np
from tqdm import tqdm

from ..errors import DomainError
from ..rng import trial_rng
from .support import (
    SupportPattern,
    identity_deviation,
    is_weakly_primitive,
    support_product,
)

if TYPE_CHECKING:
    from ..process.matrix_process import MatrixProcess


def _pattern_of(matrix: object) -> np.ndarray:
    return np.asarray(getattr(matrix, "support", matrix), dtype=bool)


def primitivity_trace(matrices: Iterable[object], max_steps: int) -> list[bool]:
    """
    Returns, for n = 1 … max_steps, whether every row of the support of
    Mₙ = Aₙ···A₁ is all-true or all-false.

    Parameters
    ----------
    matrices : Iterable[NonNegMatrix | SupportPattern | ArrayLike]
        The factors A₁, A₂, …; consumed lazily.
    max_steps : int
        Number of factors to use.
    """
    if max_steps < 1:
        raise DomainError(f"max_steps ({max_steps}) must be at least 1.")
    flags = []
    product = None
    for matrix in itertools.islice(matrices, max_steps):
        pattern = _pattern_of(matrix)
        if product is None:
            product = SupportPattern.identity(pattern.shape[0])
        product = _advance(product, pattern)
        flags.append(product.is_weakly_primitive)
    return flags


def _advance(product: SupportPattern, pattern: np.ndarray) -> SupportPattern:
    return support_product(
        SupportPattern(pattern), product, identity_deviation(pattern)
    )


def weak_primitivity_time(
    matrices: Iterable[object],
    max_steps: int,
) -> Optional[int]:
    """
    Returns the first n ≤ max_steps at which every row of the support of
    Mₙ = Aₙ···A₁ is all-true or all-false, or None if not reached.

    Parameters
    ----------
    matrices : Iterable[NonNegMatrix | SupportPattern | ArrayLike]
        The factors A₁, A₂, …; consumed lazily and only as far as needed.
    max_steps : int
        The horizon, at least 1.

    Examples
    --------
    >>> weak_primitivity_time([[[1, 1], [1, 1]]], max_steps=1)
    1
    >>> weak_primitivity_time(itertools.repeat([[1, 0], [0, 1]]), 50) is None
    True
    """
    if max_steps < 1:
        raise DomainError(f"max_steps ({max_steps}) must be at least 1.")
    product: Optional[SupportPattern] = None
    for n, matrix in enumerate(itertools.islice(matrices, max_steps), start=1):
        pattern = _pattern_of(matrix)
        if product is None:
            product = SupportPattern.identity(pattern.shape[0])
        product = _advance(product, pattern)
        if is_weakly_primitive(product.pattern):
            return n
    return None


def psi_index(
    matrices: Iterable[object],
    max_steps: int,
    start: int = 1,
) -> Optional[int]:
    """
    Returns ψₙ: the smallest window length ψ ≤ max_steps such that every row of
    A_{n+ψ−1}···Aₙ is all-true or all-false, with n = `start`.

    Parameters
    ----------
    matrices : Iterable
        The factors A₁, A₂, …
    max_steps : int
        The largest window length tried.
    start : int, optional
        The position n, 1-indexed; by default 1.
    """
    if start < 1:
        raise DomainError(f"start ({start}) must be at least 1.")
    window = itertools.islice(iter(matrices), start - 1, None)
    return weak_primitivity_time(window, max_steps)


def sample_primitivity_times(
    process: MatrixProcess,
    trials: int,
    horizon: int,
    seed: int,
    start: int = 1,
    progress: bool = False,
) -> list[Optional[int]]:
    """
    Monte Carlo samples of ψ at position `start` (the weak primitivity time
    when start = 1), one trajectory per trial stream.
    """
    if trials < 1:
        raise DomainError(f"trials ({trials}) must be at least 1.")
    samples = []
    for trial in tqdm(range(trials), disable=not progress, desc="primitivity"):
        rng = trial_rng(seed, trial)
        matrices = (process.sample(rng) for _ in itertools.count())
        samples.append(psi_index(matrices, horizon, start=start))
    return samples
