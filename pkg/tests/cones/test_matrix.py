import numpy as np
import pytest
from pushex.cones import NonNegMatrix, RowClass, row_classification
from pushex.errors import DomainError


def test_init():
    """NonNegMatrix should keep its entries and support read-only."""
    A = NonNegMatrix([[1.0, 0.0], [0.5, 2.0]])
    assert A.dim == 2
    assert A.support.tolist() == [[True, False], [True, True]]
    with pytest.raises(ValueError):
        A.entries[0, 0] = 3.0


def test_invalid_entries():
    """NonNegMatrix should reject non-square, negative and non-finite input."""
    with pytest.raises(DomainError):
        NonNegMatrix([[1.0, 2.0]])
    with pytest.raises(DomainError):
        NonNegMatrix([[1.0, -1.0], [0.0, 1.0]])
    with pytest.raises(DomainError):
        NonNegMatrix([[np.inf, 0.0], [0.0, 1.0]])


def test_alpha_beta():
    """alpha and beta should be the extreme positive entries."""
    A = NonNegMatrix([[0.0, 0.25], [0.5, 1.0]])
    assert A.alpha == 0.25
    assert A.beta == 1.0
    with pytest.raises(DomainError):
        NonNegMatrix(np.zeros((2, 2))).alpha


def test_column_allowable():
    """is_column_allowable should detect zero columns."""
    assert NonNegMatrix([[1.0, 0.0], [0.0, 1.0]]).is_column_allowable
    assert not NonNegMatrix([[1.0, 0.0], [1.0, 0.0]]).is_column_allowable


def test_column_sums():
    """column_sums should sum every column."""
    A = NonNegMatrix([[0.75, 0.25], [0.25, 0.75]])
    assert A.column_sums.tolist() == [1.0, 1.0]


def test_row_classification():
    """Rows should be classified as positive, zero or mixed."""
    classes = row_classification([[True, True], [False, False], [True, False]])
    assert classes == [RowClass.POSITIVE, RowClass.ZERO, RowClass.MIXED]


def test_row_classes_of_matrix():
    """row_classification should accept objects with a support attribute."""
    A = NonNegMatrix([[1.0, 1.0], [0.0, 2.0]])
    assert row_classification(A) == A.row_classes == [RowClass.POSITIVE, RowClass.MIXED]


def test_matmul_and_equality():
    """Products and equality should follow the entries."""
    A = NonNegMatrix([[1.0, 1.0], [0.0, 1.0]])
    assert A @ NonNegMatrix.identity(2) == A
    assert hash(A @ NonNegMatrix.identity(2)) == hash(A)
