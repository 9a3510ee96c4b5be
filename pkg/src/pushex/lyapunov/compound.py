from __future__ import annotations

import math
from functools import lru_cache
from typing import Final, Optional

import numpy as np
from rich.console import Console
from tqdm import tqdm

from ..cones import NonNegMatrix
from ..errors import DomainError, EstimatorError
from ..process.matrix_process import ProcessLike, matrix_stream
from ..rng import STREAM_ESTIMATOR, make_rng
from ..typing import FloatArray, IntArray

console = Console(stderr=True)

MAX_COMPOUND_DIM: Final = 2000
MAX_RESTARTS: Final = 5


@lru_cache(maxsize=16)
def index_pairs(dim: int) -> tuple[IntArray, IntArray]:
    """Returns the pairs i < j in lexicographic order as two index arrays."""
    first, second = np.triu_indices(dim, k=1)
    first.setflags(write=False)
    second.setflags(write=False)
    return first, second


def compound_matrix(A: NonNegMatrix | FloatArray) -> FloatArray:
    """
    Returns the second compound A∧A: the matrix of all 2×2 minors.

    The entry at row pair (i<j) and column pair (k<l) is
    A[i,k]·A[j,l] − A[i,l]·A[j,k]. Pairs are ordered lexicographically.

    Examples
    --------
    >>> compound_matrix(np.array([[1.0, 2.0], [3.0, 4.0]])).tolist()
    [[-2.0]]
    """
    entries = A.entries if isinstance(A, NonNegMatrix) else np.asarray(A, dtype=np.float64)
    dim = entries.shape[0]
    if dim < 2:
        raise DomainError(f"The compound needs dim ≥ 2, got {dim}.")
    i, j = index_pairs(dim)
    rows_i, rows_j = entries[i], entries[j]
    return rows_i[:, i] * rows_j[:, j] - rows_i[:, j] * rows_j[:, i]


def _random_direction(rng: np.random.Generator, size: int) -> FloatArray:
    vector = rng.standard_normal(size)
    return vector / np.linalg.norm(vector)


def estimate_sum_top2_via_compound(
    process: ProcessLike,
    n_steps: int,
    seed: int,
    progress: bool = False,
) -> float:
    """
    Estimates λ₁ + λ₂ as the top exponent of the compound process Aₙ∧Aₙ.

    A normalized vector is iterated under the compounds while the logs of the
    norms are accumulated. If the iterate collapses to zero, the iteration
    restarts from a fresh random direction and the accumulation starts over.

    Parameters
    ----------
    process : MatrixProcess | NonNegMatrix | ArrayLike | Iterable[NonNegMatrix]
        The matrix process.
    n_steps : int
        Number of factors.
    seed : int
        Seed of the matrix and direction streams.

    Returns
    -------
    float
        The estimated λ₁ + λ₂.

    Raises
    ------
    DomainError
        If C(dim, 2) exceeds 2000.
    EstimatorError
        If the iterate collapses more than 5 times.

    Examples
    --------
    >>> estimate = estimate_sum_top2_via_compound(np.diag([2.0, 1.0]), 100, seed=0)
    >>> round(estimate, 12) == round(math.log(2.0), 12)
    True
    """
    if n_steps < 1:
        raise DomainError(f"n_steps ({n_steps}) must be positive.")
    rng = make_rng(seed, STREAM_ESTIMATOR)
    vector: Optional[FloatArray] = None
    log_sum = 0.0
    counted = 0
    restarts = 0
    stream = matrix_stream(process, seed, n_steps)
    for matrix, _ in tqdm(stream, total=n_steps, disable=not progress, desc="compound"):
        size = math.comb(matrix.dim, 2)
        if size > MAX_COMPOUND_DIM:
            raise DomainError(
                f"C({matrix.dim}, 2) = {size} exceeds {MAX_COMPOUND_DIM}; "
                "the compound check is for small networks."
            )
        if vector is None:
            vector = _random_direction(rng, size)
        image = compound_matrix(matrix) @ vector
        norm = float(np.linalg.norm(image))
        if norm == 0 or not math.isfinite(norm):
            restarts += 1
            if restarts > MAX_RESTARTS:
                raise EstimatorError(
                    f"The compound iterate collapsed {restarts} times; giving up."
                )
            console.print(
                f"[yellow]compound iterate collapsed at step {counted + 1}, "
                f"restarting ({restarts}/{MAX_RESTARTS})[/yellow]"
            )
            vector = _random_direction(rng, size)
            log_sum = 0.0
            counted = 0
            continue
        log_sum += math.log(norm)
        counted += 1
        vector = image / norm
    if counted == 0:
        raise EstimatorError("No step of the compound iteration succeeded.")
    return log_sum / counted
