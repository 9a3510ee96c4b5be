import math

import numpy as np
import pytest
from pushex.cones import (
    ExtendedReal,
    NonNegVector,
    hilbert_distance,
    hilbert_distance_by_definition,
    tv_distance,
)
from pushex.errors import DomainError


def test_nonneg_vector_support():
    """NonNegVector should record the exact support of its entries."""
    v = NonNegVector([0.0, 2.0, 1.0])
    assert v.support.tolist() == [False, True, True]
    assert v.total == 3.0
    assert len(v) == 3


def test_nonneg_vector_rejects_negative():
    """NonNegVector should reject negative and non-finite entries."""
    with pytest.raises(DomainError):
        NonNegVector([1.0, -0.5])
    with pytest.raises(DomainError):
        NonNegVector([1.0, np.nan])


def test_normalized():
    """normalized should scale a vector to sum 1."""
    v = NonNegVector([1.0, 3.0]).normalized()
    assert v.entries.tolist() == [0.25, 0.75]
    with pytest.raises(DomainError):
        NonNegVector([0.0, 0.0]).normalized()


def test_hilbert_distance_value():
    """h((1,2),(2,1)) should be log 4."""
    assert hilbert_distance([1, 2], [2, 1]).to_float() == pytest.approx(math.log(4.0))


def test_hilbert_distance_scale_invariant():
    """The Hilbert distance should not depend on positive scalings."""
    x = np.array([1.0, 5.0, 2.0])
    y = np.array([3.0, 1.0, 4.0])
    base = hilbert_distance(x, y).to_float()
    assert hilbert_distance(2 * x, 7 * y).to_float() == pytest.approx(base, abs=1e-12)


def test_hilbert_distance_same_ray():
    """Vectors on the same ray should be at distance 0."""
    assert hilbert_distance([1.0, 2.0, 0.0], [2.0, 4.0, 0.0]) == 0


def test_hilbert_distance_mismatched_support():
    """Vectors on different faces should be infinitely far apart."""
    distance = hilbert_distance([1.0, 0.0], [1.0, 1.0])
    assert not distance.is_finite
    assert distance.to_float() == math.inf


def test_hilbert_distance_zero_vector():
    """The Hilbert distance should be undefined for the zero vector."""
    with pytest.raises(DomainError):
        hilbert_distance([0.0, 0.0], [1.0, 1.0])


def test_hilbert_distance_length_mismatch():
    """The Hilbert distance should reject vectors of different lengths."""
    with pytest.raises(DomainError):
        hilbert_distance([1.0, 1.0], [1.0, 1.0, 1.0])


def test_hilbert_distance_matches_definition():
    """The closed formula should agree with the inf/sup definition."""
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        dim = int(rng.integers(2, 6))
        x = rng.random(dim) * (rng.random(dim) > 0.2)
        y = rng.random(dim) * (rng.random(dim) > 0.2)
        if not x.any() or not y.any():
            continue
        formula = hilbert_distance(x, y)
        definition = hilbert_distance_by_definition(x, y)
        assert formula.is_finite == definition.is_finite
        if formula.is_finite:
            assert formula.value == pytest.approx(definition.value, abs=1e-10)


def test_tv_distance_value():
    """tv_distance should be half the l1 distance."""
    assert tv_distance([0.5, 0.5], [0.25, 0.75]) == 0.25
    assert tv_distance([1.0, 0.0], [0.0, 1.0]) == 1.0


def test_tv_distance_requires_probability_vectors():
    """tv_distance should reject vectors that do not sum to 1."""
    with pytest.raises(DomainError):
        tv_distance([0.5, 0.6], [0.5, 0.5])


def test_tv_bounded_by_hilbert():
    """The TV distance should be at most (e^h - 1) / 2."""
    rng = np.random.default_rng(1)
    for _ in range(10_000):
        dim = int(rng.integers(2, 6))
        x = rng.random(dim) + 1e-3
        y = rng.random(dim) + 1e-3
        h = hilbert_distance(x, y).to_float()
        tv = tv_distance(x / x.sum(), y / y.sum())
        assert tv <= 0.5 * math.expm1(h) + 1e-12


def test_extended_real_ratio():
    """ExtendedReal.ratio should use the convention inf/inf = 1."""
    inf = ExtendedReal.infinity()
    assert inf.ratio(inf) == 1.0
    assert ExtendedReal.finite(1.0).ratio(inf) == 0.0
    assert ExtendedReal.finite(1.0).ratio(ExtendedReal.finite(4.0)) == 0.25
    with pytest.raises(DomainError):
        inf.ratio(ExtendedReal.finite(1.0))


def test_extended_real_ordering():
    """Finite values should compare below infinity."""
    assert ExtendedReal.finite(1e300) < ExtendedReal.infinity()
    assert ExtendedReal.infinity() == math.inf
    assert ExtendedReal.finite(2.0) == 2.0


def test_extended_real_rejects_negative():
    """ExtendedReal should reject negative finite values."""
    with pytest.raises(DomainError):
        ExtendedReal.finite(-1.0)


def test_triangle_inequality():
    """h(x, z) <= h(x, y) + h(y, z) on random positive vectors."""
    rng = np.random.default_rng(5)
    for _ in range(2000):
        dim = int(rng.integers(2, 7))
        x, y, z = rng.uniform(0.01, 10.0, size=(3, dim))
        direct = hilbert_distance(x, z).to_float()
        via = hilbert_distance(x, y).to_float() + hilbert_distance(y, z).to_float()
        assert direct <= via + 1e-12
