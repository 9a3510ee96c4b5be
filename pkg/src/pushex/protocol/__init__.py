from .augmented import AugmentedIndex, build_augmented
from .consensus import (
    ConsensusErrorTracker,
    ConsensusTrajectory,
    run_consensus,
)
from .push_sum import (
    ProtocolState,
    PushSumProtocol,
    StepOutcome,
    as_matrix,
    transmit_fractions,
)
from .topology import NetworkTopology

__all__ = [
    "AugmentedIndex",
    "ConsensusErrorTracker",
    "ConsensusTrajectory",
    "NetworkTopology",
    "ProtocolState",
    "PushSumProtocol",
    "StepOutcome",
    "as_matrix",
    "build_augmented",
    "run_consensus",
    "transmit_fractions",
]
