from __future__ import annotations

from typing import Optional

import numpy as np
import numpy.typing as npt

from ..cones import RowClass, row_classification
from ..cones.scaled_product import support_left_multiply
from ..errors import DomainError
from ..typing import BoolArray, IntArray


class SupportPattern:
    """
    The positivity pattern of a nonnegative matrix, as a boolean matrix.

    Products are taken in the boolean semiring, so exact zeros are never lost
    to rounding.

    Parameters
    ----------
    pattern : ArrayLike | NonNegMatrix | ScaledProduct
        Boolean square matrix, or any object with a `support` attribute.

    Examples
    --------
    >>> P = SupportPattern([[1, 0], [1, 1]])
    >>> (P @ P).to_list()
    [[True, False], [True, True]]
    """

    __slots__ = ("_pattern",)

    def __init__(self, pattern: object):
        values = np.array(getattr(pattern, "support", pattern), dtype=bool)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DomainError(f"Support must be square, got shape {values.shape}.")
        values.setflags(write=False)
        self._pattern = values

    @classmethod
    def identity(cls, dim: int) -> SupportPattern:
        return cls(np.eye(dim, dtype=bool))

    @property
    def pattern(self) -> BoolArray:
        return self._pattern

    @property
    def support(self) -> BoolArray:
        return self._pattern

    @property
    def dim(self) -> int:
        return self._pattern.shape[0]

    @property
    def row_classes(self) -> list[RowClass]:
        return row_classification(self._pattern)

    @property
    def zero_rows(self) -> BoolArray:
        return ~self._pattern.any(axis=1)

    @property
    def is_weakly_primitive(self) -> bool:
        """Whether every row is all-true or all-false."""
        return is_weakly_primitive(self._pattern)

    def to_list(self) -> list[list[bool]]:
        return self._pattern.tolist()

    def __matmul__(self, other: SupportPattern) -> SupportPattern:
        return support_product(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SupportPattern):
            return NotImplemented
        return np.array_equal(self._pattern, other._pattern)

    def __hash__(self) -> int:
        return hash((self._pattern.shape, self._pattern.tobytes()))

    def __repr__(self) -> str:
        return f"SupportPattern({self._pattern.astype(int).tolist()})"


def is_weakly_primitive(pattern: npt.ArrayLike) -> bool:
    pattern = np.asarray(pattern, dtype=bool)
    return bool(np.all(pattern.all(axis=1) | ~pattern.any(axis=1)))


def identity_deviation(pattern: BoolArray) -> IntArray:
    """Returns the columns of a square boolean matrix that differ from I."""
    return np.flatnonzero(np.any(pattern != np.eye(pattern.shape[0], dtype=bool), axis=0))


def support_product(
    P: SupportPattern,
    Q: SupportPattern,
    columns: Optional[IntArray] = None,
) -> SupportPattern:
    """
    Returns the boolean-semiring product P·Q: (P·Q)ᵢⱼ = OR over k of
    (Pᵢₖ AND Qₖⱼ).

    Parameters
    ----------
    P, Q : SupportPattern
        Factors of equal dimension.
    columns : IntArray, optional
        Columns of P that differ from the identity, if known.
    """
    if P.dim != Q.dim:
        raise DomainError(f"Dimension mismatch ({P.dim} != {Q.dim}).")
    return SupportPattern(support_left_multiply(P.pattern, Q.pattern, columns))
