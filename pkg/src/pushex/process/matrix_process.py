from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

import numpy as np
import numpy.typing as npt

from ..cones import NonNegMatrix
from ..errors import DomainError
from ..rng import STREAM_MATRICES, make_rng
from ..typing import IntArray


class RangeElement(NamedTuple):
    """A matrix of a finite-range process with its probability."""

    matrix: NonNegMatrix
    probability: float


class MatrixProcess(ABC):
    """
    An i.i.d. process of nonnegative square matrices.

    Subclasses draw one matrix per call of `sample`; `stream` turns a seed into
    the reproducible sequence A₁, A₂, … used by every estimator.
    """

    @property
    @abstractmethod
    def dim(self) -> int:
        """Dimension of the matrices."""

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> NonNegMatrix:
        """Draws one matrix."""

    def sample_with_columns(
        self,
        rng: np.random.Generator,
    ) -> tuple[NonNegMatrix, Optional[IntArray]]:
        """
        Draws one matrix together with the columns that differ from the
        identity, or None when unknown.
        """
        return self.sample(rng), None

    def stream(self, seed: int, n_steps: Optional[int] = None) -> Iterator[NonNegMatrix]:
        """
        Yields A₁, A₂, … from the matrix stream of `seed`.

        Parameters
        ----------
        seed : int
            The experiment seed.
        n_steps : int, optional
            Number of matrices; infinite when None.
        """
        for matrix, _ in self.stream_with_columns(seed, n_steps):
            yield matrix

    def stream_with_columns(
        self,
        seed: int,
        n_steps: Optional[int] = None,
        stream: int = STREAM_MATRICES,
    ) -> Iterator[tuple[NonNegMatrix, Optional[IntArray]]]:
        """Yields (Aₙ, changed columns) pairs from stream `stream` of `seed`."""
        rng = make_rng(seed, stream)
        count = 0
        while n_steps is None or count < n_steps:
            yield self.sample_with_columns(rng)
            count += 1

    def finite_range(self) -> Optional[list[RangeElement]]:
        """Returns the exact finite range, or None if unknown or too large."""
        return None


class ConstantProcess(MatrixProcess):
    """
    The deterministic process Aₙ = A.

    Examples
    --------
    >>> process = ConstantProcess([[0.75, 0.25], [0.25, 0.75]])
    >>> process.dim
    2
    """

    def __init__(self, matrix: NonNegMatrix | npt.ArrayLike):
        if not isinstance(matrix, NonNegMatrix):
            matrix = NonNegMatrix(matrix)
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def sample(self, rng: np.random.Generator) -> NonNegMatrix:
        return self.matrix

    def finite_range(self) -> list[RangeElement]:
        return [RangeElement(self.matrix, 1.0)]


class FiniteRangeProcess(MatrixProcess):
    """
    An i.i.d. process drawing from a finite list of matrices.

    Parameters
    ----------
    matrices : Sequence[NonNegMatrix | ArrayLike]
        The range.
    probabilities : Sequence[float], optional
        Probability of each matrix, uniform by default.
    """

    def __init__(
        self,
        matrices: Sequence[NonNegMatrix | npt.ArrayLike],
        probabilities: Optional[Sequence[float]] = None,
    ):
        if len(matrices) == 0:
            raise DomainError("A finite-range process needs at least one matrix.")
        self.matrices = [
            m if isinstance(m, NonNegMatrix) else NonNegMatrix(m) for m in matrices
        ]
        dims = {m.dim for m in self.matrices}
        if len(dims) != 1:
            raise DomainError(f"All matrices must share one dimension, got {dims}.")
        if probabilities is None:
            probabilities = [1.0 / len(self.matrices)] * len(self.matrices)
        weights = np.asarray(probabilities, dtype=np.float64)
        if len(weights) != len(self.matrices):
            raise DomainError("One probability per matrix is required.")
        if np.any(weights < 0) or not np.isclose(weights.sum(), 1.0):
            raise DomainError(f"Invalid probabilities {list(probabilities)}.")
        self.probabilities = weights / weights.sum()

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    def sample(self, rng: np.random.Generator) -> NonNegMatrix:
        index = int(rng.choice(len(self.matrices), p=self.probabilities))
        return self.matrices[index]

    def finite_range(self) -> list[RangeElement]:
        return [
            RangeElement(matrix, float(probability))
            for matrix, probability in zip(self.matrices, self.probabilities)
            if probability > 0
        ]


class UniformPositiveProcess(MatrixProcess):
    """
    I.i.d. strictly positive matrices with entries uniform in [low, high).

    Parameters
    ----------
    dim : int
        Matrix dimension.
    low, high : float, optional
        Entry range, by default [0.1, 1).
    column_stochastic : bool, optional
        Whether to rescale every column to sum 1.
    """

    def __init__(
        self,
        dim: int,
        low: float = 0.1,
        high: float = 1.0,
        column_stochastic: bool = False,
    ):
        if dim < 1:
            raise DomainError(f"dim ({dim}) must be positive.")
        if not 0 < low < high:
            raise DomainError(f"Need 0 < low < high, got low={low}, high={high}.")
        self._dim = dim
        self.low = low
        self.high = high
        self.column_stochastic = column_stochastic

    @property
    def dim(self) -> int:
        return self._dim

    def sample(self, rng: np.random.Generator) -> NonNegMatrix:
        entries = rng.uniform(self.low, self.high, size=(self._dim, self._dim))
        if self.column_stochastic:
            entries /= entries.sum(axis=0)
        return NonNegMatrix(entries)


ProcessLike = Union[MatrixProcess, NonNegMatrix, npt.ArrayLike, Iterable[NonNegMatrix]]


def as_matrix_process(source: ProcessLike) -> Optional[MatrixProcess]:
    """Returns `source` as a process, or None for a plain iterable of matrices."""
    if isinstance(source, MatrixProcess):
        return source
    if isinstance(source, NonNegMatrix):
        return ConstantProcess(source)
    if isinstance(source, np.ndarray) and source.ndim == 2:
        return ConstantProcess(source)
    if isinstance(source, (list, tuple)) and np.ndim(source) == 2:
        return ConstantProcess(source)
    return None


def matrix_stream(
    source: ProcessLike,
    seed: int,
    n_steps: int,
) -> Iterator[tuple[NonNegMatrix, Optional[IntArray]]]:
    """
    Yields n_steps (Aₙ, changed columns) pairs from a process, a constant
    matrix or an iterable of matrices.

    Raises
    ------
    DomainError
        If an iterable source runs out before n_steps matrices.
    """
    process = as_matrix_process(source)
    if process is not None:
        yield from process.stream_with_columns(seed, n_steps)
        return
    count = 0
    for matrix in itertools.islice(source, n_steps):  # type: ignore[arg-type]
        if not isinstance(matrix, NonNegMatrix):
            matrix = NonNegMatrix(matrix)
        yield matrix, None
        count += 1
    if count < n_steps:
        raise DomainError(f"The matrix source ended after {count} of {n_steps} steps.")
