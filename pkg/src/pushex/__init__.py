from .cones import NonNegMatrix, NonNegVector, hilbert_distance, phi, tau, tv_distance
from .errors import (
    ConfigError,
    DegenerateProcessError,
    DomainError,
    EstimatorError,
    NotPrimitiveError,
    PushexError,
    RangeTooLargeError,
)
from .experiment import ExperimentConfig, check, preset, run_rate_experiment, sweep
from .lyapunov import birkhoff_gap_estimate, estimate_top2
from .process import GossipProcess, ProcessConfig, verify_conditions
from .protocol import NetworkTopology, PushSumProtocol, run_consensus
from .version import get_version

__version__ = get_version()

__all__ = [
    "ConfigError",
    "DegenerateProcessError",
    "DomainError",
    "EstimatorError",
    "ExperimentConfig",
    "GossipProcess",
    "NetworkTopology",
    "NonNegMatrix",
    "NonNegVector",
    "NotPrimitiveError",
    "ProcessConfig",
    "PushSumProtocol",
    "PushexError",
    "RangeTooLargeError",
    "birkhoff_gap_estimate",
    "check",
    "estimate_top2",
    "hilbert_distance",
    "phi",
    "preset",
    "run_consensus",
    "run_rate_experiment",
    "sweep",
    "tau",
    "tv_distance",
    "verify_conditions",
]
