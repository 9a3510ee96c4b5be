from __future__ import annotations

import math
from typing import Final, Iterable, Optional

import numpy as np
import numpy.typing as npt
from scipy.stats import linregress

from ..errors import DomainError, EstimatorError

MIN_SLOPE_POINTS: Final = 20


def fit_line(x: npt.ArrayLike, y: npt.ArrayLike) -> tuple[float, float]:
    """
    Fits y = slope·x + intercept by ordinary least squares.

    Parameters
    ----------
    x, y : ArrayLike
        Abscissae and ordinates, at least 2 points with distinct x.

    Returns
    -------
    tuple[float, float]
        The slope and the intercept.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise DomainError(f"x and y differ in length ({len(x)} != {len(y)}).")
    if len(x) < 2 or np.ptp(x) == 0:
        raise EstimatorError("A line fit needs at least two distinct abscissae.")
    result = linregress(x, y)
    return float(result.slope), float(result.intercept)


def fit_slope(
    series: Iterable[tuple[float, float]],
    burn_in_fraction: float = 0.1,
    burn_in: Optional[float] = None,
    min_points: int = MIN_SLOPE_POINTS,
) -> float:
    """
    Returns the least-squares slope of a (step, log value) series after a
    burn-in.

    Points whose log value is not finite (the error hit exactly zero, or was
    undefined) are dropped.

    Parameters
    ----------
    series : Iterable[tuple[float, float]]
        The (n, log value) pairs.
    burn_in_fraction : float, optional
        Fraction of the last step to skip, by default 0.1.
    burn_in : float, optional
        An explicit burn-in step; the larger of the two cutoffs applies.
    min_points : int, optional
        Minimal number of usable points, by default 20.

    Returns
    -------
    float
        The fitted slope.

    Raises
    ------
    EstimatorError
        If fewer than `min_points` usable points remain.

    Examples
    --------
    >>> series = [(n, -0.3 * n) for n in range(1, 101)]
    >>> round(fit_slope(series), 12)
    -0.3
    """
    if not 0 <= burn_in_fraction < 1:
        raise DomainError(f"burn_in_fraction ({burn_in_fraction}) must be in [0, 1).")
    points = [(float(n), float(value)) for n, value in series]
    if not points:
        raise EstimatorError("The series is empty.")
    cutoff = burn_in_fraction * max(n for n, _ in points)
    if burn_in is not None:
        cutoff = max(cutoff, burn_in)
    usable = [(n, value) for n, value in points if n > cutoff and math.isfinite(value)]
    if len(usable) < min_points:
        raise EstimatorError(
            f"Only {len(usable)} usable points after burn-in {cutoff:g}; "
            f"at least {min_points} are needed."
        )
    slope, _ = fit_line([n for n, _ in usable], [value for _, value in usable])
    return slope
