from .support import SupportPattern, support_product
from .primitivity import (
    primitivity_trace,
    psi_index,
    sample_primitivity_times,
    weak_primitivity_time,
)
from .node_classifier import (
    NodeClassification,
    NodeKind,
    classify_nodes,
    zero_row_frequencies,
)

__all__ = [
    "NodeClassification",
    "NodeKind",
    "SupportPattern",
    "classify_nodes",
    "primitivity_trace",
    "psi_index",
    "sample_primitivity_times",
    "support_product",
    "weak_primitivity_time",
    "zero_row_frequencies",
]
