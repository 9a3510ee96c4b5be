import itertools
import math

import numpy as np
import pytest
from pushex.errors import DomainError
from pushex.experiment import preset
from pushex.lyapunov import compound_matrix, estimate_sum_top2_via_compound, estimate_top2
from pushex.process import GossipProcess, ProcessConfig, UniformPositiveProcess
from pushex.process.generators import complete_digraph


def test_identity():
    """The compound of the identity is the identity."""
    assert (compound_matrix(np.eye(4)) == np.eye(6)).all()


def test_two_by_two():
    """The compound of a 2×2 matrix is its determinant."""
    assert compound_matrix(np.diag([2.0, 3.0])).tolist() == [[6.0]]
    assert compound_matrix(np.array([[1.0, 2.0], [3.0, 4.0]])).tolist() == [[-2.0]]


def test_entries_are_minors():
    """Every entry should be the 2×2 minor of its row and column pairs."""
    rng = np.random.default_rng(0)
    A = rng.random((4, 4))
    compound = compound_matrix(A)
    pairs = list(itertools.combinations(range(4), 2))
    for row, (i, j) in enumerate(pairs):
        for column, (k, l) in enumerate(pairs):
            minor = np.linalg.det(A[np.ix_([i, j], [k, l])])
            assert compound[row, column] == pytest.approx(minor, abs=1e-12)


def test_compound_is_multiplicative():
    """(AB)∧(AB) should equal (A∧A)(B∧B)."""
    rng = np.random.default_rng(1)
    A, B = rng.random((4, 4)), rng.random((4, 4))
    expected = compound_matrix(A) @ compound_matrix(B)
    assert compound_matrix(A @ B) == pytest.approx(expected, abs=1e-12)


def test_compound_needs_two_dimensions():
    """A 1×1 matrix has no compound."""
    with pytest.raises(DomainError):
        compound_matrix(np.ones((1, 1)))


def test_constant_sums():
    """Constant factors should give the log of the top two eigenvalues."""
    assert estimate_sum_top2_via_compound(np.diag([2.0, 1.0]), 100, seed=0) == (
        pytest.approx(math.log(2.0), abs=1e-12)
    )
    symmetric = [[0.75, 0.25], [0.25, 0.75]]
    assert estimate_sum_top2_via_compound(symmetric, 100, seed=0) == (
        pytest.approx(math.log(0.5), abs=1e-12)
    )


def test_matches_qr_estimate():
    """The compound estimate should agree with the QR sum."""
    process = UniformPositiveProcess(4)
    qr = estimate_top2(process, 20_000, seed=3)
    compound = estimate_sum_top2_via_compound(process, 20_000, seed=3)
    assert compound == pytest.approx(qr.lambda1 + qr.lambda2, abs=1e-2)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_qr_estimate_on_gossip(seed):
    """On lossy five-node gossip the compound and QR sums should agree."""
    process = preset("sync5", seed=seed).build_process()
    qr = estimate_top2(process, 20_000, seed=seed)
    assert qr.lambda2 is not None
    compound = estimate_sum_top2_via_compound(process, 20_000, seed=seed)
    assert compound == pytest.approx(qr.lambda1 + qr.lambda2, abs=1e-2)


def test_compound_too_large():
    """Networks with a huge compound should be refused."""
    process = GossipProcess(ProcessConfig(complete_digraph(8)))
    with pytest.raises(DomainError):
        estimate_sum_top2_via_compound(process, 10, seed=0)
