from .birkhoff import (
    TauWitness,
    contraction_ratio,
    log_tau,
    phi,
    tau,
    tau_witness_sequence,
)
from .matrix import NonNegMatrix, RowClass, row_classification
from .scaled_product import ScaledProduct, multiply_accumulate
from .vector import (
    ExtendedReal,
    NonNegVector,
    hilbert_distance,
    hilbert_distance_by_definition,
    tv_distance,
)

__all__ = [
    "ExtendedReal",
    "NonNegMatrix",
    "NonNegVector",
    "RowClass",
    "ScaledProduct",
    "TauWitness",
    "contraction_ratio",
    "hilbert_distance",
    "hilbert_distance_by_definition",
    "log_tau",
    "multiply_accumulate",
    "phi",
    "row_classification",
    "tau",
    "tau_witness_sequence",
    "tv_distance",
]
