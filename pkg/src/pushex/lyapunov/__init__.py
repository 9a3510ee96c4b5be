from .birkhoff_gap import (
    BirkhoffGapEstimate,
    BirkhoffGapEstimator,
    BirkhoffTracker,
    MeanLogTau,
    birkhoff_gap_estimate,
    mean_log_tau,
)
from .compound import compound_matrix, estimate_sum_top2_via_compound
from .first_order import FirstOrderApprox, first_order_approx, subexponential_witness
from .qr_estimator import (
    LyapunovEstimate,
    QrEstimator,
    QrEstimatorState,
    WindowEstimate,
    estimate_top2,
    qr_step,
)

__all__ = [
    "BirkhoffGapEstimate",
    "BirkhoffGapEstimator",
    "BirkhoffTracker",
    "FirstOrderApprox",
    "LyapunovEstimate",
    "MeanLogTau",
    "QrEstimator",
    "QrEstimatorState",
    "WindowEstimate",
    "birkhoff_gap_estimate",
    "compound_matrix",
    "estimate_sum_top2_via_compound",
    "estimate_top2",
    "first_order_approx",
    "mean_log_tau",
    "qr_step",
    "subexponential_witness",
]
