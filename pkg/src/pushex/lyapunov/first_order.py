from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..cones import NonNegVector, ScaledProduct
from ..errors import DomainError


@dataclass(frozen=True)
class FirstOrderApprox:
    """
    Rank-one approximation Mₙ ≈ u¹ (v¹)ᵀ σ¹ of a product.

    Attributes
    ----------
    u1 : NonNegVector
        Unit left singular direction; zero exactly on the zero rows of Mₙ.
    v1 : NonNegVector
        Unit right singular direction.
    sigma1_log : float
        log σ¹, including the product's scale.
    """

    u1: NonNegVector
    v1: NonNegVector
    sigma1_log: float

    def target(self, x: npt.ArrayLike, w: npt.ArrayLike) -> float:
        """Returns the limit ratio v¹·x / v¹·w."""
        v = self.v1.entries
        denominator = float(v @ np.asarray(w, dtype=np.float64))
        if denominator == 0:
            raise DomainError("v¹·w is zero; the target is undefined.")
        return float(v @ np.asarray(x, dtype=np.float64)) / denominator


def first_order_approx(P: ScaledProduct) -> FirstOrderApprox:
    """
    Returns the top singular triplet of a scaled product.

    The singular vectors are sign-normalized so that the largest entry of v¹
    is positive, clipped at zero, and refined by one nonnegative power sweep,
    which makes u¹ vanish exactly on the zero rows.

    Parameters
    ----------
    P : ScaledProduct
        A nonzero product.

    Returns
    -------
    FirstOrderApprox
        u¹, v¹ and log σ¹.

    Examples
    --------
    >>> from pushex.cones import NonNegMatrix
    >>> P = ScaledProduct.identity(2).multiplied(NonNegMatrix(np.diag([4.0, 1.0])))
    >>> approx = first_order_approx(P)
    >>> approx.u1.entries.tolist(), round(math.exp(approx.sigma1_log), 12)
    ([1.0, 0.0], 4.0)
    """
    numeric = P.numeric
    if not np.any(numeric):
        raise DomainError("The product is zero.")
    U, S, Vt = np.linalg.svd(numeric)
    u, v = U[:, 0], Vt[0]
    if v[np.argmax(np.abs(v))] < 0:
        u, v = -u, -v
    v = np.clip(v, 0.0, None)
    if not np.any(v):
        v = np.abs(Vt[0])
    u = numeric @ v
    u = u / np.linalg.norm(u)
    v = numeric.T @ u
    v = v / np.linalg.norm(v)
    return FirstOrderApprox(
        u1=NonNegVector(u),
        v1=NonNegVector(v),
        sigma1_log=math.log(float(S[0])) + P.log_scale,
    )


def subexponential_witness(P: ScaledProduct) -> float:
    """
    Returns (1/n) max over k and rows i, j with Mₙ^{ik}, Mₙ^{jk} > 0 of
    log(Mₙ^{ik}/Mₙ^{jk}).

    For weakly subexponential processes this tends to 0.
    """
    if P.steps == 0:
        return 0.0
    numeric = P.numeric
    usable = P.support & (numeric > 0)
    best = 0.0
    for k in range(P.dim):
        column = numeric[usable[:, k], k]
        if len(column) < 2:
            continue
        best = max(best, math.log(column.max()) - math.log(column.min()))
    return best / P.steps
