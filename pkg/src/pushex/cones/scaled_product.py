from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Final, Optional

import numpy as np

from ..errors import DomainError
from ..typing import BoolArray, FloatArray, IntArray
from .matrix import NonNegMatrix, RowClass, row_classification

LN2: Final = math.log(2.0)

# use the low-rank update when fewer than 1/LOW_RANK_RATIO columns change
LOW_RANK_RATIO: Final = 4


def changed_columns(entries: FloatArray) -> IntArray:
    """Returns the indices of the columns of a square matrix that differ from I."""
    dim = entries.shape[0]
    return np.flatnonzero(np.any(entries != np.eye(dim), axis=0))


def left_multiply(
    a: FloatArray,
    m: FloatArray,
    columns: Optional[IntArray] = None,
) -> FloatArray:
    """
    Returns a @ m.

    When `columns` lists the only columns of `a` that differ from the identity,
    the product is formed as m (with those rows cleared) plus
    a[:, columns] @ m[columns].
    """
    if columns is None or len(columns) * LOW_RANK_RATIO >= a.shape[0]:
        return a @ m
    result = m.copy()
    result[columns] = 0.0
    result += a[:, columns] @ m[columns]
    return result


def support_left_multiply(
    a: BoolArray,
    m: BoolArray,
    columns: Optional[IntArray] = None,
) -> BoolArray:
    """Boolean-semiring counterpart of `left_multiply`."""
    if columns is None or len(columns) * LOW_RANK_RATIO >= a.shape[0]:
        return (a.astype(np.float64) @ m.astype(np.float64)) > 0
    result = m.copy()
    result[columns] = False
    result |= (a[:, columns].astype(np.float64) @ m[columns].astype(np.float64)) > 0
    return result


def renormalize(numeric: FloatArray) -> tuple[FloatArray, int]:
    """
    Scales `numeric` by a power of two so that its largest magnitude lies in
    (1/2, 1].

    Returns
    -------
    tuple[FloatArray, int]
        The scaled array and the binary exponent e with numeric = scaled · 2^e.
    """
    peak = float(np.abs(numeric).max()) if numeric.size else 0.0
    if peak == 0:
        raise DomainError("Cannot renormalize a zero array.")
    mantissa, exponent = math.frexp(peak)
    if mantissa == 0.5:
        exponent -= 1
    return np.ldexp(numeric, -exponent), exponent


@dataclass(frozen=True)
class ScaledProduct:
    """
    Running product Mₙ = Aₙ···A₁ stored as numeric · 2^exponent with its exact
    support.

    Attributes
    ----------
    numeric : FloatArray
        Renormalized product, largest entry in (1/2, 1].
    exponent : int
        Accumulated binary exponent.
    support : BoolArray
        Positivity pattern of the product, propagated in the boolean semiring.
    steps : int
        Number of factors n.
    """

    numeric: FloatArray = field(repr=False)
    exponent: int
    support: BoolArray = field(repr=False)
    steps: int

    def __post_init__(self):
        self.numeric.setflags(write=False)
        self.support.setflags(write=False)

    @classmethod
    def identity(cls, dim: int) -> ScaledProduct:
        return cls(
            numeric=np.eye(dim),
            exponent=0,
            support=np.eye(dim, dtype=bool),
            steps=0,
        )

    @property
    def dim(self) -> int:
        return self.numeric.shape[0]

    @property
    def log_scale(self) -> float:
        """Natural log of the scale factor."""
        return self.exponent * LN2

    @property
    def row_classes(self) -> list[RowClass]:
        return row_classification(self.support)

    @property
    def positive_rows(self) -> BoolArray:
        return self.support.all(axis=1)

    @property
    def zero_rows(self) -> BoolArray:
        return ~self.support.any(axis=1)

    @property
    def is_weakly_primitive(self) -> bool:
        """Whether every row is strictly positive or zero."""
        return bool(np.all(self.positive_rows | self.zero_rows))

    def reconstruct(self) -> FloatArray:
        """Returns numeric · e^{log_scale}. May overflow for long products."""
        return np.ldexp(self.numeric, self.exponent)

    def multiplied(self, A: NonNegMatrix) -> ScaledProduct:
        return multiply_accumulate(self, A)


def multiply_accumulate(
    P: ScaledProduct,
    A: NonNegMatrix,
    columns: Optional[IntArray] = None,
) -> ScaledProduct:
    """
    Returns the product A · P, renormalized.

    Parameters
    ----------
    P : ScaledProduct
        The running product Mₙ₋₁.
    A : NonNegMatrix
        The next factor Aₙ.
    columns : IntArray, optional
        Columns of A that differ from the identity, if known.

    Raises
    ------
    DomainError
        If the dimensions differ or the product is the zero matrix.

    Examples
    --------
    >>> P = ScaledProduct.identity(2)
    >>> for _ in range(60):
    ...     P = multiply_accumulate(P, NonNegMatrix(0.5 * np.eye(2)))
    >>> P.exponent
    -60
    """
    if A.dim != P.dim:
        raise DomainError(f"Dimension mismatch ({A.dim} != {P.dim}).")
    if columns is None:
        columns = changed_columns(A.entries)
    numeric = left_multiply(A.entries, P.numeric, columns)
    support = support_left_multiply(A.support, P.support, columns)
    if not support.any():
        raise DomainError("The product became the zero matrix.")
    numeric, shift = renormalize(numeric)
    return ScaledProduct(
        numeric=numeric,
        exponent=P.exponent + shift,
        support=support,
        steps=P.steps + 1,
    )
