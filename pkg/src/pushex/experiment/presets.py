from __future__ import annotations

from typing import Final

from ..errors import ConfigError
from .experiment_config import ExperimentConfig

PRESETS: Final[dict[str, dict]] = {
    # asynchronous push-sum on 30 nodes of out-degree 10; sweep drop_rate over it
    "async30": {
        "topology": {"type": "random_regular_out", "p": 30, "d": 10},
        "mode": "async",
        "drop_rate": 0.0,
        "s": "classic",
        "steps": 50_000,
        "seed": 0,
    },
    "sync5": {
        "topology": {"type": "random_regular_out", "p": 5, "d": 2},
        "mode": "sync",
        "drop_rate": 0.2,
        "s": "classic",
        "steps": 20_000,
        "seed": 0,
    },
}


def preset(name: str, **overrides) -> ExperimentConfig:
    """
    Returns a named experiment configuration.

    Parameters
    ----------
    name : {"async30", "sync5"}
        The preset.
    **overrides
        Fields replacing the preset values.

    Examples
    --------
    >>> preset("sync5", steps=2000).steps
    2000
    """
    if name not in PRESETS:
        raise ConfigError(f"Unknown preset '{name}'; choose from {sorted(PRESETS)}.")
    return ExperimentConfig.load({**PRESETS[name], **overrides})
