from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Final, Union

import numpy as np
import numpy.typing as npt

from ..errors import DomainError
from ..typing import BoolArray, FloatArray

PROBABILITY_TOLERANCE: Final = 1e-9


@total_ordering
@dataclass(frozen=True)
class ExtendedReal:
    """
    A nonnegative real number or +∞.

    Infinity is a tagged state, never a float infinity. Use `to_float` when a
    plain float is needed for reporting.

    Attributes
    ----------
    value : float
        The finite value. Ignored when `infinite` is True.
    infinite : bool
        Whether the value is +∞.
    """

    value: float = 0.0
    infinite: bool = False

    def __post_init__(self):
        if not self.infinite:
            if not math.isfinite(self.value) or self.value < 0:
                raise DomainError(
                    f"ExtendedReal value ({self.value}) must be finite and nonnegative."
                )

    @classmethod
    def finite(cls, value: float) -> ExtendedReal:
        """Returns a finite extended real."""
        return cls(value=float(value))

    @classmethod
    def infinity(cls) -> ExtendedReal:
        """Returns +∞."""
        return cls(value=0.0, infinite=True)

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def to_float(self) -> float:
        """Returns the value as a float, with +∞ mapped to `math.inf`."""
        return math.inf if self.infinite else self.value

    def ratio(self, other: ExtendedReal) -> float:
        """
        Returns self / other under the convention ∞/∞ = 1.

        Raises
        ------
        DomainError
            If the ratio is undefined (∞ over a finite value, or division by 0).
        """
        if self.infinite and other.infinite:
            return 1.0
        if other.infinite:
            return 0.0
        if self.infinite:
            raise DomainError("Ratio of ∞ over a finite value is unbounded.")
        if other.value == 0:
            raise DomainError("Ratio with a zero denominator is undefined.")
        return self.value / other.value

    def __lt__(self, other: object) -> bool:
        other = _as_extended(other)
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.value < other.value

    def __eq__(self, other: object) -> bool:
        try:
            other = _as_extended(other)
        except (TypeError, DomainError):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return self.value == other.value

    def __hash__(self) -> int:
        return hash((self.infinite, 0.0 if self.infinite else self.value))

    def __str__(self) -> str:
        return "inf" if self.infinite else repr(self.value)


def _as_extended(value: object) -> ExtendedReal:
    if isinstance(value, ExtendedReal):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        if math.isinf(value) and value > 0:
            return ExtendedReal.infinity()
        return ExtendedReal.finite(float(value))
    raise TypeError(f"Cannot compare ExtendedReal with {type(value).__name__}.")


class NonNegVector:
    """
    A nonnegative vector paired with its exact support.

    Parameters
    ----------
    entries : ArrayLike
        Nonnegative, finite entries.

    Raises
    ------
    DomainError
        If an entry is negative or not finite.

    Examples
    --------
    >>> v = NonNegVector([0.0, 2.0, 1.0])
    >>> v.support
    array([False,  True,  True])
    """

    __slots__ = ("_entries", "_support")

    def __init__(self, entries: npt.ArrayLike):
        values = np.array(entries, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise DomainError("Vector entries must be finite.")
        if np.any(values < 0):
            raise DomainError("Vector entries must be nonnegative.")
        values.setflags(write=False)
        support = values > 0
        support.setflags(write=False)
        self._entries = values
        self._support = support

    @property
    def entries(self) -> FloatArray:
        return self._entries

    @property
    def support(self) -> BoolArray:
        return self._support

    @property
    def length(self) -> int:
        return len(self._entries)

    @property
    def is_zero(self) -> bool:
        return not self._support.any()

    @property
    def total(self) -> float:
        return float(self._entries.sum())

    def normalized(self) -> NonNegVector:
        """Returns the vector scaled to sum 1."""
        if self.is_zero:
            raise DomainError("Cannot normalize the zero vector.")
        return NonNegVector(self._entries / self._entries.sum())

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"NonNegVector({self._entries.tolist()})"


VectorInput = Union[NonNegVector, npt.ArrayLike]


def as_nonneg_vector(value: VectorInput) -> NonNegVector:
    if isinstance(value, NonNegVector):
        return value
    return NonNegVector(value)


def _check_pair(x: VectorInput, y: VectorInput) -> tuple[NonNegVector, NonNegVector]:
    x, y = as_nonneg_vector(x), as_nonneg_vector(y)
    if x.length != y.length:
        raise DomainError(f"Vector lengths differ ({x.length} != {y.length}).")
    if x.is_zero or y.is_zero:
        raise DomainError("The Hilbert distance is defined for nonzero vectors only.")
    return x, y


def hilbert_distance(x: VectorInput, y: VectorInput) -> ExtendedReal:
    """
    Hilbert projective distance of two nonnegative, nonzero vectors.

    Parameters
    ----------
    x, y : NonNegVector | ArrayLike
        Nonnegative, nonzero vectors of equal length.

    Returns
    -------
    ExtendedReal
        log max over nontrivial pairs (k, l) of (x_k/y_k)/(x_l/y_l) when the
        vectors lie on the same face, +∞ otherwise.

    Examples
    --------
    >>> hilbert_distance([1, 2], [2, 1]).to_float()  # log 4
    1.3862943611198906
    """
    x, y = _check_pair(x, y)
    if not np.array_equal(x.support, y.support):
        return ExtendedReal.infinity()
    face = x.support
    log_ratios = np.log(x.entries[face]) - np.log(y.entries[face])
    distance = float(log_ratios.max() - log_ratios.min())
    return ExtendedReal.finite(max(distance, 0.0))


def hilbert_distance_by_definition(x: VectorInput, y: VectorInput) -> ExtendedReal:
    """
    Hilbert distance evaluated from the inf/sup definition.

    The infimum of {λ ≥ 0 : λy − x ≥ 0} and the supremum of
    {λ ≥ 0 : x − λy ≥ 0} are obtained by intersecting the feasible λ-sets of
    every coordinate. Used as an oracle for `hilbert_distance`.
    """
    x, y = _check_pair(x, y)
    upper_inf = 0.0  # inf{λ : λy ≥ x}
    upper_feasible = True
    lower_sup = math.inf  # sup{λ : x ≥ λy}
    for x_k, y_k in zip(x.entries.tolist(), y.entries.tolist()):
        if y_k == 0:
            # λ·0 ≥ x_k requires x_k = 0; x_k ≥ 0 always holds
            if x_k > 0:
                upper_feasible = False
            continue
        upper_inf = max(upper_inf, x_k / y_k)
        lower_sup = min(lower_sup, x_k / y_k)
    if not upper_feasible or lower_sup == 0:
        return ExtendedReal.infinity()
    return ExtendedReal.finite(max(math.log(upper_inf / lower_sup), 0.0))


def tv_distance(xi: VectorInput, eta: VectorInput) -> float:
    """
    Total variation distance of two probability vectors.

    Raises
    ------
    DomainError
        If an input does not sum to 1 within 1e-9 or the lengths differ.

    Examples
    --------
    >>> tv_distance([0.5, 0.5], [0.25, 0.75])
    0.25
    """
    xi, eta = as_nonneg_vector(xi), as_nonneg_vector(eta)
    if xi.length != eta.length:
        raise DomainError(f"Vector lengths differ ({xi.length} != {eta.length}).")
    for name, vector in (("xi", xi), ("eta", eta)):
        if abs(vector.total - 1.0) > PROBABILITY_TOLERANCE:
            raise DomainError(
                f"{name} must be a probability vector (sum = {vector.total})."
            )
    return 0.5 * float(np.abs(xi.entries - eta.entries).sum())
