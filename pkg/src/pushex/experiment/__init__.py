from .experiment_config import ExperimentConfig, TopologyConfig
from .rate_experiment import RateDiagnostics, RateReport, gap_agreement, run_rate_experiment
from .sweep import SweepRow, sweep, to_csv, write_csv
from .checker import CheckReport, PrimitivitySummary, check, primitivity_summary, print_check_report
from .presets import PRESETS, preset

__all__ = [
    "PRESETS",
    "CheckReport",
    "ExperimentConfig",
    "PrimitivitySummary",
    "RateDiagnostics",
    "RateReport",
    "SweepRow",
    "TopologyConfig",
    "check",
    "gap_agreement",
    "preset",
    "primitivity_summary",
    "print_check_report",
    "run_rate_experiment",
    "sweep",
    "to_csv",
    "write_csv",
]
