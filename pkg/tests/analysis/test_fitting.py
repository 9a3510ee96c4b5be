import math

import numpy as np
import pytest
from pushex.analysis import fit_line, fit_slope
from pushex.errors import DomainError, EstimatorError


def test_fit_line():
    """An exact line should be recovered."""
    slope, intercept = fit_line([0.0, 1.0, 2.0], [1.0, 3.0, 5.0])
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(1.0)


def test_fit_line_invalid():
    """Mismatched lengths and constant abscissae should be rejected."""
    with pytest.raises(DomainError):
        fit_line([0.0, 1.0], [1.0])
    with pytest.raises(EstimatorError):
        fit_line([1.0, 1.0], [0.0, 2.0])


def test_exact_slope():
    """A linear log series should give its slope."""
    series = [(n, -0.3 * n) for n in range(1, 101)]
    assert fit_slope(series) == pytest.approx(-0.3, abs=1e-12)


def test_noisy_slope():
    """Noise should average out over many points."""
    rng = np.random.default_rng(0)
    series = [(n, -0.05 * n + rng.normal(0, 0.5)) for n in range(1, 5001)]
    assert fit_slope(series) == pytest.approx(-0.05, rel=1e-2)


def test_burn_in_is_skipped():
    """Points before the burn-in should not influence the fit."""
    series = [(n, 0.0 if n <= 50 else -(n - 50.0)) for n in range(1, 201)]
    assert fit_slope(series, burn_in=50) == pytest.approx(-1.0, abs=1e-12)
    assert fit_slope(series, burn_in_fraction=0.0) != pytest.approx(-1.0, abs=1e-3)


def test_non_finite_points_dropped():
    """Exact zeros and undefined values should be skipped."""
    series = [(n, -0.2 * n) for n in range(1, 101)]
    series += [(101, -math.inf), (102, math.nan)]
    assert fit_slope(series) == pytest.approx(-0.2, abs=1e-12)


def test_too_few_points():
    """A series without enough usable points should fail."""
    with pytest.raises(EstimatorError):
        fit_slope([(n, -math.inf) for n in range(1, 101)])
    with pytest.raises(EstimatorError):
        fit_slope([(n, -1.0 * n) for n in range(1, 11)])
    with pytest.raises(EstimatorError):
        fit_slope([])
    with pytest.raises(DomainError):
        fit_slope([(1, 0.0)], burn_in_fraction=1.0)
