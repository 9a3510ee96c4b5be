from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final, Union

import numpy as np
import numpy.typing as npt

from ..errors import DomainError
from ..typing import FloatArray, IntArray
from .matrix import NonNegMatrix, has_mixed_row
from .vector import ExtendedReal, NonNegVector, VectorInput, hilbert_distance

# below this log φ, tanh(φ/4) = φ/4 to double precision
LINEAR_TANH_LOG_PHI: Final = -20.0

MatrixInput = Union[NonNegMatrix, npt.ArrayLike]


def as_nonneg_matrix(value: MatrixInput) -> NonNegMatrix:
    if isinstance(value, NonNegMatrix):
        return value
    return NonNegMatrix(value)


def column_oscillation(values: FloatArray) -> float:
    """
    Returns max over column pairs (i, j) of osc_k (V[k, i] − V[k, j]).

    The quantity is symmetric in rows and columns, so the loop runs over the
    shorter axis.
    """
    if values.shape[0] < 2 or values.shape[1] < 2:
        return 0.0
    if values.shape[0] < values.shape[1]:
        values = values.T
    best = 0.0
    for i in range(values.shape[1]):
        diff = values[:, [i]] - values
        spread = diff.max(axis=0) - diff.min(axis=0)
        best = max(best, float(spread.max()))
    return best


def phi(A: MatrixInput) -> ExtendedReal:
    """
    Maximal Hilbert distance between the columns of A.

    Parameters
    ----------
    A : NonNegMatrix | ArrayLike
        A nonnegative, nonzero square matrix.

    Returns
    -------
    ExtendedReal
        +∞ if a row of A has both a positive and a zero entry, otherwise the
        log of the maximal cross ratio (A^{ki}/A^{kj})/(A^{li}/A^{lj}) over
        strictly positive rows k, l.

    Examples
    --------
    >>> phi([[2, 1], [1, 2]]).to_float()  # log 4
    1.3862943611198906
    """
    A = as_nonneg_matrix(A)
    if A.is_zero:
        raise DomainError("φ is undefined for the zero matrix.")
    if has_mixed_row(A.support):
        return ExtendedReal.infinity()
    positive_rows = A.support.all(axis=1)
    log_rows = np.log(A.entries[positive_rows])
    return ExtendedReal.finite(column_oscillation(log_rows))


def log_tau_from_log_phi(log_phi: float) -> float:
    """Returns log tanh(φ/4) given log φ, accurate for tiny φ."""
    if log_phi == -math.inf:
        return -math.inf
    if log_phi < LINEAR_TANH_LOG_PHI:
        return log_phi - math.log(4.0)
    value = math.tanh(math.exp(log_phi) / 4.0)
    return math.log(value) if value > 0 else -math.inf


def log_tau(A: MatrixInput) -> float:
    """
    Natural log of the Birkhoff contraction coefficient.

    Returns 0 when τ(A) = 1 and −∞ when τ(A) = 0 (rank-one positive part).
    """
    value = phi(A)
    if not value.is_finite:
        return 0.0
    if value.value == 0:
        return -math.inf
    return log_tau_from_log_phi(math.log(value.value))


def tau(A: MatrixInput) -> float:
    """
    Birkhoff contraction coefficient τ(A) = tanh(φ(A)/4).

    Returns 1 when φ(A) = ∞, i.e. when some row of A is mixed.

    Examples
    --------
    >>> round(tau([[2, 1], [1, 2]]), 12)
    0.333333333333
    >>> tau([[1, 0], [0, 1]])
    1.0
    """
    value = phi(A)
    if not value.is_finite:
        return 1.0
    return math.tanh(value.value / 4.0)


def contraction_ratio(A: MatrixInput, x: VectorInput, y: VectorInput) -> float:
    """
    Returns h(Ax, Ay) / h(x, y), using ∞/∞ = 1.

    τ(A) is the supremum of this ratio over pairs with h(x, y) > 0.
    """
    A = as_nonneg_matrix(A)
    source = hilbert_distance(x, y)
    if source == 0:
        raise DomainError("h(x, y) must be positive.")
    x_image = NonNegVector(A.entries @ _entries(x))
    y_image = NonNegVector(A.entries @ _entries(y))
    return hilbert_distance(x_image, y_image).ratio(source)


def _entries(value: VectorInput) -> FloatArray:
    if isinstance(value, NonNegVector):
        return value.entries
    return np.asarray(value, dtype=np.float64)


@dataclass(frozen=True)
class TauWitness:
    """
    A vector pair showing τ(A) = 1 for a matrix with a mixed row.

    Attributes
    ----------
    x, y : NonNegVector
        x = (1, n+1, 0, …, 0) and y = (1, n, 0, …, 0) in permuted coordinates.
    ratio : float
        h(Ax, Ay) / h(x, y).
    row_permutation, column_permutation : IntArray
        Index orders under which A[0, 0] > 0 and A[0, 1] = 0.
    """

    x: NonNegVector
    y: NonNegVector
    ratio: float
    row_permutation: IntArray
    column_permutation: IntArray


def tau_witness_sequence(A: MatrixInput, n: int) -> TauWitness:
    """
    Builds the n-th witness pair for τ(A) = 1.

    Parameters
    ----------
    A : NonNegMatrix | ArrayLike
        A matrix with a row containing both a positive and a zero entry and
        without a zero column.
    n : int
        Index of the pair, n ≥ 1. The ratio increases toward 1 with n.

    Raises
    ------
    DomainError
        If A has no mixed row, has a zero column, or n < 1.
    """
    A = as_nonneg_matrix(A)
    if n < 1:
        raise DomainError(f"n ({n}) must be at least 1.")
    if not A.is_column_allowable:
        raise DomainError("A must not have a zero column.")
    support = A.support
    mixed = np.flatnonzero(support.any(axis=1) & ~support.all(axis=1))
    if len(mixed) == 0:
        raise DomainError("A has no row with both a positive and a zero entry.")
    row = int(mixed[0])
    first = int(np.flatnonzero(support[row])[0])
    second = int(np.flatnonzero(~support[row])[0])

    p = A.dim
    rows = np.array([row] + [k for k in range(p) if k != row])
    rest = [k for k in range(p) if k not in (first, second)]
    columns = np.array([first, second] + rest)

    x = np.zeros(p)
    y = np.zeros(p)
    x[first], x[second] = 1.0, n + 1.0
    y[first], y[second] = 1.0, float(n)
    ratio = contraction_ratio(A, x, y)
    return TauWitness(
        x=NonNegVector(x),
        y=NonNegVector(y),
        ratio=ratio,
        row_permutation=rows,
        column_permutation=columns,
    )
