from __future__ import annotations

from typing import Literal, Sequence, Union

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]
BoolArray = NDArray[np.bool_]
IntArray = NDArray[np.int64]

Mode = Literal["sync", "async"]

TransmitFraction = Union[float, Literal["classic"]]

VectorLike = Union[Sequence[float], FloatArray]
