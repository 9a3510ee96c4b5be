from __future__ import annotations

from typing import Final

import numpy as np

STREAM_MATRICES: Final = 0
STREAM_ESTIMATOR: Final = 1
STREAM_INITIAL: Final = 2
STREAM_TOPOLOGY: Final = 3
STREAM_TRIALS: Final = 100


def make_rng(seed: int, stream: int = STREAM_MATRICES) -> np.random.Generator:
    """
    Returns an independent random generator for `stream` of `seed`.

    Parameters
    ----------
    seed : int
        The experiment seed (64-bit).
    stream : int, optional
        The stream id. Streams of the same seed are statistically independent
        and each is reproducible on its own.

    Examples
    --------
    >>> a = make_rng(7, STREAM_MATRICES).random()
    >>> b = make_rng(7, STREAM_MATRICES).random()
    >>> a == b
    True
    """
    if seed < 0:
        raise ValueError(f"seed ({seed}) must be nonnegative.")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.default_rng(sequence)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Returns the generator of Monte Carlo trial `trial`."""
    return make_rng(seed, STREAM_TRIALS + trial)
