import numpy as np
import pytest
from pushex.experiment import ExperimentConfig, check, preset, primitivity_summary
from pushex.process import ConstantProcess


def test_sync5_satisfies_hypotheses():
    """The lossy five-node preset should pass every check."""
    report = check(preset("sync5"), horizon=500, psi_trials=20, classify_trials=2)
    assert report.verdict[0] == "bounded condition: proven (finite range)"
    assert report.verdict[-1] == "hypotheses satisfied: yes"
    assert report.hypotheses_satisfied
    assert report.strongly_connected
    assert report.real_nodes == [0, 1, 2, 3, 4]
    assert report.virtual_nodes == list(range(5, 15))
    assert report.node_labels[:2] == ["N0", "N1"]
    assert report.conditions.exact
    assert report.primitivity.reached
    assert "weak primitivity: reached at n = " in report.verdict[2]


def test_full_drop_is_degenerate():
    """drop_rate = 1 should fail the check with an explicit verdict."""
    with pytest.warns(UserWarning):
        report = check(
            preset("sync5", drop_rate=1.0), horizon=100, psi_trials=5, classify_trials=1
        )
    assert report.degenerate
    assert "degenerate process: drop_rate = 1" in report.verdict
    assert "weak primitivity: not reached" in report.verdict
    assert report.verdict[-1] == "hypotheses satisfied: no"


def test_disconnected_network(tmp_path):
    """A network that is not strongly connected should be reported."""
    path = tmp_path / "chain.txt"
    path.write_text("0 1\n1 0\n2 0\n", encoding="utf-8")
    config = ExperimentConfig.load(
        {"topology": {"type": "edge_list", "path": str(path)}, "drop_rate": 0.1}
    )
    report = check(config, horizon=100, psi_trials=5, classify_trials=1)
    assert not report.strongly_connected
    assert "network: not strongly connected" in report.verdict
    assert not report.hypotheses_satisfied


def test_primitivity_summary():
    """The identity process never becomes weakly primitive."""
    summary = primitivity_summary(ConstantProcess(np.eye(3)), seed=0, horizon=50)
    assert summary.verdict == "weak primitivity: not reached"
    assert not summary.reached
    positive = primitivity_summary(ConstantProcess(np.ones((2, 2))), seed=0)
    assert positive.verdict == "weak primitivity: reached at n = 1"
