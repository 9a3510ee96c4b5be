import numpy as np
import pytest
from pushex.cones import NonNegMatrix, RowClass, ScaledProduct, multiply_accumulate
from pushex.cones.scaled_product import changed_columns, left_multiply, renormalize
from pushex.errors import DomainError


def test_identity():
    """The empty product should be the identity."""
    P = ScaledProduct.identity(3)
    assert P.steps == 0
    assert P.exponent == 0
    assert (P.reconstruct() == np.eye(3)).all()


def test_exponent_tracks_scale():
    """Repeated halving should move into the exponent, not the mantissa."""
    P = ScaledProduct.identity(2)
    for _ in range(2000):
        P = multiply_accumulate(P, NonNegMatrix(0.5 * np.eye(2)))
    assert P.exponent == -2000
    assert (P.numeric == np.eye(2)).all()
    assert P.log_scale == pytest.approx(-2000 * np.log(2.0))


def test_reconstruct_matches_dense_product():
    """reconstruct should equal the plain product A_n ... A_1."""
    rng = np.random.default_rng(0)
    matrices = [rng.random((3, 3)) for _ in range(5)]
    P = ScaledProduct.identity(3)
    expected = np.eye(3)
    for A in matrices:
        P = multiply_accumulate(P, NonNegMatrix(A))
        expected = A @ expected
    assert P.steps == 5
    assert P.reconstruct() == pytest.approx(expected, rel=1e-12)


def test_support_is_exact():
    """The support should follow the boolean product of the factors."""
    A = NonNegMatrix([[1.0, 0.0], [1e-300, 1.0]])
    P = multiply_accumulate(ScaledProduct.identity(2), A)
    P = multiply_accumulate(P, NonNegMatrix([[1e-300, 0.0], [0.0, 1.0]]))
    assert P.support.tolist() == [[True, False], [True, True]]
    assert P.row_classes == [RowClass.MIXED, RowClass.POSITIVE]


def test_zero_product():
    """A zero product should be rejected."""
    with pytest.raises(DomainError):
        multiply_accumulate(ScaledProduct.identity(2), NonNegMatrix(np.zeros((2, 2))))


def test_dimension_mismatch():
    """Factors of another dimension should be rejected."""
    with pytest.raises(DomainError):
        multiply_accumulate(ScaledProduct.identity(2), NonNegMatrix.identity(3))


def test_weak_primitivity():
    """is_weakly_primitive should accept positive and zero rows only."""
    P = multiply_accumulate(
        ScaledProduct.identity(2), NonNegMatrix([[1.0, 1.0], [0.0, 0.0]])
    )
    assert P.is_weakly_primitive
    assert not ScaledProduct.identity(2).is_weakly_primitive


def test_low_rank_update():
    """The low-rank update should equal the dense product."""
    rng = np.random.default_rng(1)
    dim = 12
    a = np.eye(dim)
    a[:, [3, 7]] = rng.random((dim, 2))
    m = rng.random((dim, dim))
    columns = changed_columns(a)
    assert columns.tolist() == [3, 7]
    assert left_multiply(a, m, columns) == pytest.approx(a @ m, rel=1e-14)


def test_renormalize():
    """renormalize should put the peak magnitude in (1/2, 1]."""
    scaled, exponent = renormalize(np.array([3.0, -6.0]))
    assert scaled.tolist() == [0.375, -0.75]
    assert exponent == 3
    scaled, exponent = renormalize(np.array([0.25]))
    assert scaled.tolist() == [1.0]
    assert exponent == -2
    with pytest.raises(DomainError):
        renormalize(np.zeros(2))
