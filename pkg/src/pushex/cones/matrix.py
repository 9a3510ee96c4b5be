from __future__ import annotations

from enum import Enum

import numpy as np
import numpy.typing as npt

from ..errors import DomainError
from ..typing import BoolArray, FloatArray


class RowClass(Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    MIXED = "mixed"


def row_classification(support: object) -> list[RowClass]:
    """
    Classifies every row of a boolean support pattern.

    Parameters
    ----------
    support : ArrayLike | NonNegMatrix | ScaledProduct | SupportPattern
        Boolean matrix (True = strictly positive entry), or any object with a
        `support` attribute.

    Returns
    -------
    list[RowClass]
        POSITIVE for all-true rows, ZERO for all-false rows, MIXED otherwise.

    Examples
    --------
    >>> row_classification([[True, True], [False, False]])
    [<RowClass.POSITIVE: 'positive'>, <RowClass.ZERO: 'zero'>]
    """
    pattern = np.asarray(getattr(support, "support", support), dtype=bool)
    positive = pattern.all(axis=1)
    zero = ~pattern.any(axis=1)
    classes = []
    for is_positive, is_zero in zip(positive.tolist(), zero.tolist()):
        if is_positive:
            classes.append(RowClass.POSITIVE)
        elif is_zero:
            classes.append(RowClass.ZERO)
        else:
            classes.append(RowClass.MIXED)
    return classes


def has_mixed_row(support: npt.ArrayLike) -> bool:
    """Returns True if some row has both a positive and a zero entry."""
    pattern = np.asarray(support, dtype=bool)
    return bool(np.any(pattern.any(axis=1) & ~pattern.all(axis=1)))


class NonNegMatrix:
    """
    A dense nonnegative square matrix paired with its exact support pattern.

    Parameters
    ----------
    entries : ArrayLike
        Square matrix of finite, nonnegative entries.

    Raises
    ------
    DomainError
        If the matrix is not square, has a negative or non-finite entry.
    """

    __slots__ = ("_entries", "_support")

    def __init__(self, entries: npt.ArrayLike):
        values = np.array(entries, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DomainError(f"Matrix must be square, got shape {values.shape}.")
        if not np.all(np.isfinite(values)):
            raise DomainError("Matrix entries must be finite.")
        if np.any(values < 0):
            raise DomainError("Matrix entries must be nonnegative.")
        values += 0.0  # -0.0 -> 0.0
        values.setflags(write=False)
        support = values > 0
        support.setflags(write=False)
        self._entries = values
        self._support = support

    @classmethod
    def identity(cls, dim: int) -> NonNegMatrix:
        return cls(np.eye(dim))

    @property
    def entries(self) -> FloatArray:
        return self._entries

    @property
    def support(self) -> BoolArray:
        return self._support

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def is_zero(self) -> bool:
        return not self._support.any()

    @property
    def is_column_allowable(self) -> bool:
        """Whether every column contains a strictly positive entry."""
        return bool(self._support.any(axis=0).all())

    @property
    def is_positive(self) -> bool:
        return bool(self._support.all())

    @property
    def row_classes(self) -> list[RowClass]:
        return row_classification(self._support)

    @property
    def column_sums(self) -> FloatArray:
        return self._entries.sum(axis=0)

    @property
    def alpha(self) -> float:
        """Minimal positive entry."""
        if self.is_zero:
            raise DomainError("The zero matrix has no positive entry.")
        return float(self._entries[self._support].min())

    @property
    def beta(self) -> float:
        """Maximal entry."""
        return float(self._entries.max())

    def __matmul__(self, other: NonNegMatrix) -> NonNegMatrix:
        return NonNegMatrix(self._entries @ other._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonNegMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self) -> int:
        return hash((self._entries.shape, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f"NonNegMatrix({self._entries.tolist()})"
