from .matrix_process import (
    ConstantProcess,
    FiniteRangeProcess,
    MatrixProcess,
    ProcessLike,
    RangeElement,
    UniformPositiveProcess,
    as_matrix_process,
    matrix_stream,
)
from .generators import bidirectional_pair, complete_digraph, random_regular_out_digraph
from .gossip_process import (
    GossipProcess,
    ProcessConfig,
    RowStructure,
    enumerate_range,
    sample_step_matrix,
)
from .conditions import ConditionReport, verify_conditions

__all__ = [
    "ConditionReport",
    "ConstantProcess",
    "FiniteRangeProcess",
    "GossipProcess",
    "MatrixProcess",
    "ProcessConfig",
    "ProcessLike",
    "RangeElement",
    "RowStructure",
    "UniformPositiveProcess",
    "as_matrix_process",
    "bidirectional_pair",
    "complete_digraph",
    "enumerate_range",
    "matrix_stream",
    "random_regular_out_digraph",
    "sample_step_matrix",
    "verify_conditions",
]
