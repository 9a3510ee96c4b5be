from __future__ import annotations

from typing import Final, Literal, Optional, Union

import numpy as np
from pydantic import Field, model_validator
from pydantic.dataclasses import dataclass

from ..errors import ConfigError, DomainError
from ..model import Model
from ..process import GossipProcess, ProcessConfig
from ..process.generators import complete_digraph, random_regular_out_digraph
from ..protocol import NetworkTopology
from ..rng import STREAM_INITIAL, make_rng
from ..typing import FloatArray

TopologyType = Literal["random_regular_out", "complete", "edge_list"]
Estimator = Literal["qr", "birkhoff", "empirical", "compound"]
ValuesPreset = Literal["random_positive"]
WeightsPreset = Literal["average", "sum"]

DEFAULT_ESTIMATORS: Final[tuple[Estimator, ...]] = ("qr", "birkhoff", "empirical")
MIN_RATE_STEPS: Final = 1000


@dataclass
class TopologyConfig(Model):
    """
    How the network is obtained.

    Attributes
    ----------
    type : {"random_regular_out", "complete", "edge_list"}
        Generator of the network.
    p : int, optional
        Number of nodes; required unless `type` is "edge_list".
    d : int, optional
        Out-degree of "random_regular_out".
    path : str, optional
        Edge-list file of "edge_list".
    seed : int, optional
        Seed of the topology stream; the experiment seed when omitted.
    strongly_connected : bool
        Whether "random_regular_out" redraws until the digraph is strongly
        connected, by default True.
    """

    type: TopologyType = "random_regular_out"
    p: Optional[int] = Field(default=None, ge=2)
    d: Optional[int] = Field(default=None, ge=1)
    path: Optional[str] = None
    seed: Optional[int] = Field(default=None, ge=0)
    strongly_connected: bool = True

    @model_validator(mode="after")
    def _check_fields(self):
        if self.type == "random_regular_out" and (self.p is None or self.d is None):
            raise ValueError("random_regular_out needs both p and d.")
        if self.type == "complete" and self.p is None:
            raise ValueError("complete needs p.")
        if self.type == "edge_list" and self.path is None:
            raise ValueError("edge_list needs path.")
        if self.p is not None and self.d is not None and self.d >= self.p:
            raise ValueError(f"d ({self.d}) must be smaller than p ({self.p}).")
        return self

    def build(self, seed: int) -> NetworkTopology:
        """Builds the network; `seed` is used when no topology seed is set."""
        try:
            if self.type == "random_regular_out":
                topology_seed = seed if self.seed is None else self.seed
                return random_regular_out_digraph(  # type: ignore
                    self.p, self.d, topology_seed, self.strongly_connected
                )
            if self.type == "complete":
                return complete_digraph(self.p)  # type: ignore
            return NetworkTopology.load(self.path, p=self.p)  # type: ignore
        except (DomainError, OSError) as e:
            raise ConfigError(f"Cannot build the topology: {e}") from e


@dataclass
class ExperimentConfig(Model):
    """
    A complete experiment description.

    Attributes
    ----------
    topology : TopologyConfig
        The network.
    mode : {"sync", "async"}
        Protocol mode.
    drop_rate : float
        Per-edge drop probability.
    s : float | "classic" | list[float]
        Transmit fraction(s); "classic" means dᵢ/(dᵢ+1).
    steps : int
        Number of protocol steps n.
    seed : int
        Experiment seed.
    x0 : "random_positive" | list[float]
        Initial values over the real nodes (or all coordinates).
    w0 : "average" | "sum" | list[float]
        Initial weights; "average" is 𝟙, "sum" is e₁.
    estimators : list[str]
        Subset of {"qr", "birkhoff", "empirical", "compound"}.
    output_path : str, optional
        Where the CLI writes its output; stdout when omitted.
    """

    topology: TopologyConfig
    mode: Literal["sync", "async"] = "sync"
    drop_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    s: Union[Literal["classic"], float, list[float]] = "classic"
    steps: int = Field(default=20_000, ge=1)
    seed: int = Field(default=0, ge=0)
    x0: Union[ValuesPreset, list[float]] = "random_positive"
    w0: Union[WeightsPreset, list[float]] = "average"
    estimators: list[Estimator] = Field(default_factory=lambda: list(DEFAULT_ESTIMATORS))
    output_path: Optional[str] = None

    @model_validator(mode="after")
    def _check_fractions(self):
        fractions = [self.s] if isinstance(self.s, float) else self.s
        if isinstance(fractions, list) and not all(0 < s <= 1 for s in fractions):
            raise ValueError(f"s ({self.s}) must lie in (0, 1].")
        return self

    def replaced(self, **changes) -> ExperimentConfig:
        """Returns a validated copy with the given fields changed."""
        data = self.to_dict()
        data.update(changes)
        return ExperimentConfig.load(data)

    def build_topology(self) -> NetworkTopology:
        return self.topology.build(self.seed)

    def process_config(self) -> ProcessConfig:
        """Returns the matrix process parameters of this experiment."""
        s = tuple(self.s) if isinstance(self.s, list) else self.s
        try:
            return ProcessConfig(
                topology=self.build_topology(),
                mode=self.mode,
                drop_rate=self.drop_rate,
                s=s,
                seed=self.seed,
            )
        except DomainError as e:
            raise ConfigError(str(e)) from e

    def build_process(self) -> GossipProcess:
        try:
            return GossipProcess(self.process_config())
        except DomainError as e:
            raise ConfigError(str(e)) from e

    def initial_vectors(self, p: int) -> tuple[FloatArray, FloatArray]:
        """
        Resolves the x0 and w0 presets for a network of `p` nodes.

        "random_positive" draws x0 uniformly from [1, 2) on the initial-vector
        stream of the seed.
        """
        if self.x0 == "random_positive":
            x0 = 1.0 + make_rng(self.seed, STREAM_INITIAL).random(p)
        else:
            x0 = np.array(self.x0, dtype=np.float64)
        if self.w0 == "average":
            w0 = np.ones(p)
        elif self.w0 == "sum":
            w0 = np.zeros(p)
            w0[0] = 1.0
        else:
            w0 = np.array(self.w0, dtype=np.float64)
        return x0, w0
