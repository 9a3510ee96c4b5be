from __future__ import annotations

from typing import Final, Optional

from pydantic.dataclasses import dataclass
from rich.console import Console
from rich.table import Table

from ..model import Model
from ..primitivity import classify_nodes, weak_primitivity_time
from ..process import ConditionReport, MatrixProcess, verify_conditions
from .experiment_config import ExperimentConfig

console = Console()

DEFAULT_HORIZON: Final = 1000


@dataclass
class PrimitivitySummary(Model):
    """Weak primitivity time of the matrix stream of one seed."""

    time: Optional[int]
    horizon: int

    @property
    def reached(self) -> bool:
        return self.time is not None

    @property
    def verdict(self) -> str:
        if self.time is None:
            return "weak primitivity: not reached"
        return f"weak primitivity: reached at n = {self.time}"


def primitivity_summary(
    process: MatrixProcess,
    seed: int,
    horizon: int = DEFAULT_HORIZON,
) -> PrimitivitySummary:
    """
    Follows the support of Mₙ along the stream of `seed` up to `horizon`.

    Examples
    --------
    >>> import numpy as np
    >>> from pushex.process import ConstantProcess
    >>> primitivity_summary(ConstantProcess(np.eye(3)), seed=0, horizon=20).verdict
    'weak primitivity: not reached'
    """
    return PrimitivitySummary(
        time=weak_primitivity_time(process.stream(seed), horizon),
        horizon=horizon,
    )


@dataclass
class CheckReport(Model):
    """
    Whether a configuration satisfies the hypotheses of the rate bounds.

    Attributes
    ----------
    conditions : ConditionReport
        Boundedness evidence and the ψ Monte Carlo.
    primitivity : PrimitivitySummary
        Weak primitivity time of the experiment's own stream.
    strongly_connected : bool
        Whether the network is strongly connected.
    real_nodes, virtual_nodes : list[int]
        Split of the augmented coordinates.
    node_labels : list[str]
        Labels of the augmented coordinates.
    degenerate : bool
        Whether drop_rate = 1.
    hypotheses_satisfied : bool
        Whether all checks passed.
    verdict : list[str]
        Human-readable verdict lines.
    """

    conditions: ConditionReport
    primitivity: PrimitivitySummary
    strongly_connected: bool
    real_nodes: list[int]
    virtual_nodes: list[int]
    node_labels: list[str]
    degenerate: bool
    hypotheses_satisfied: bool
    verdict: list[str]


def check(
    config: ExperimentConfig,
    horizon: int = DEFAULT_HORIZON,
    psi_trials: int = 100,
    classify_trials: int = 10,
    progress: bool = False,
) -> CheckReport:
    """
    Collects the evidence for the rate bounds' hypotheses.

    Parameters
    ----------
    config : ExperimentConfig
        The experiment.
    horizon : int, optional
        Horizon of the primitivity checks, by default 1000.
    psi_trials : int, optional
        Number of ψ trials, by default 100.
    classify_trials : int, optional
        Number of trajectories of the node classification, by default 10.

    Returns
    -------
    CheckReport
        The evidence and the verdict.
    """
    process = config.build_process()
    process_config = process.config
    conditions = verify_conditions(
        process_config,
        psi_trials=psi_trials,
        psi_horizon=horizon,
        progress=progress,
    )
    classification = classify_nodes(
        process, trials=classify_trials, horizon=horizon, progress=progress
    )
    primitivity = primitivity_summary(process, config.seed, horizon)
    strongly_connected = process.topology.is_strongly_connected
    degenerate = process_config.drop_rate >= 1.0

    verdict = []
    if conditions.bounded_condition and conditions.finite_range:
        verdict.append("bounded condition: proven (finite range)")
    else:
        verdict.append("bounded condition: violated")
    source = "enumerated range" if conditions.exact else f"{conditions.n_samples} samples"
    verdict.append(
        f"alpha = {conditions.alpha_min:.6g}, beta = {conditions.beta_max:.6g} ({source})"
    )
    verdict.append(primitivity.verdict)
    verdict.append(
        f"psi: reached in {conditions.psi_reached}/{conditions.psi_trials} trials"
    )
    verdict.append(
        "network: strongly connected" if strongly_connected else "network: not strongly connected"
    )
    if degenerate:
        verdict.append("degenerate process: drop_rate = 1")
    satisfied = (
        conditions.bounded_condition
        and primitivity.reached
        and conditions.psi_reached == conditions.psi_trials
        and strongly_connected
        and not degenerate
    )
    verdict.append(f"hypotheses satisfied: {'yes' if satisfied else 'no'}")

    return CheckReport(
        conditions=conditions,
        primitivity=primitivity,
        strongly_connected=strongly_connected,
        real_nodes=classification.real_nodes,
        virtual_nodes=classification.virtual_nodes,
        node_labels=process.protocol.augmented.labels(),
        degenerate=degenerate,
        hypotheses_satisfied=satisfied,
        verdict=verdict,
    )


def print_check_report(report: CheckReport):
    """Prints the report as a table."""
    table = Table(
        show_header=True,
        header_style="bold",
        title="HYPOTHESIS CHECK",
    )
    table.add_column("CHECK", justify="left")
    table.add_column("RESULT", justify="left")
    conditions = report.conditions
    table.add_row("bounded condition", "proven" if conditions.bounded_condition else "violated")
    table.add_row("alpha_min", f"{conditions.alpha_min:.6g}")
    table.add_row("beta_max", f"{conditions.beta_max:.6g}")
    table.add_row("exact range", "yes" if conditions.exact else "no (sampled)")
    table.add_row("range size", str(conditions.range_size or "-"))
    table.add_row("weak primitivity", report.primitivity.verdict.split(": ", 1)[1])
    table.add_row(
        "E[psi] estimate",
        "-"
        if conditions.psi_expectation_estimate is None
        else f"{conditions.psi_expectation_estimate:.4g}",
    )
    table.add_row("strongly connected", "yes" if report.strongly_connected else "no")
    labels = report.node_labels
    table.add_row("real nodes", ", ".join(labels[i] for i in report.real_nodes) or "-")
    table.add_row("virtual nodes", ", ".join(labels[i] for i in report.virtual_nodes) or "-")
    console.print(table)
    style = "green" if report.hypotheses_satisfied else "red"
    console.print(f"[{style}]{report.verdict[-1]}[/{style}]")
