from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from typing import Final, Literal, Optional, Sequence, TextIO, Union

from pydantic.dataclasses import dataclass
from tqdm import tqdm

from ..errors import ConfigError, DomainError, EstimatorError
from ..model import Model
from .experiment_config import ExperimentConfig
from .rate_experiment import run_rate_experiment

SweepParam = Literal["drop_rate", "s"]
SWEEP_PARAMS: Final = ("drop_rate", "s")
NOT_PRIMITIVE: Final = "not primitive"

Gap = Union[float, Literal["not primitive"], None]


@dataclass
class SweepRow(Model):
    """One rate experiment of a sweep, at a grid value and a seed."""

    param_name: SweepParam
    param_value: float
    seed: int
    lambda1: Optional[float]
    lambda2: Optional[float]
    gap_qr: Gap
    gap_birkhoff: Gap
    slope_tv: Optional[float]
    slope_ratio_error: Optional[float]
    n_steps: int
    wall_time_ms: float


SWEEP_COLUMNS: Final = tuple(field.name for field in fields(SweepRow))


def _check_grid(param: str, grid: Sequence[float]):
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"Sweep parameter must be one of {SWEEP_PARAMS}, got '{param}'.")
    for value in grid:
        if param == "drop_rate" and not 0 <= value < 1:
            raise ConfigError(f"drop_rate grid value ({value}) must be in [0, 1).")
        if param == "s" and not 0 < value <= 1:
            raise ConfigError(f"s grid value ({value}) must be in (0, 1].")


def _run_row(task: tuple[dict, str, float, int, bool]) -> SweepRow:
    data, param, value, seed, timing = task
    config = ExperimentConfig.load({**data, param: value, "seed": seed})
    start = time.perf_counter()
    try:
        report = run_rate_experiment(config)
    except (DomainError, EstimatorError):
        lambda1 = lambda2 = slope_tv = slope_ratio = None
        gap_qr: Gap = NOT_PRIMITIVE
        gap_birkhoff: Gap = NOT_PRIMITIVE
    else:
        lambda1, lambda2 = report.lambda1, report.lambda2
        slope_tv, slope_ratio = report.slope_tv, report.slope_ratio_error
        gap_qr = report.gap_qr
        gap_birkhoff = report.gap_birkhoff
        if report.diagnostics.gap_birkhoff_status == "not_primitive":
            gap_birkhoff = NOT_PRIMITIVE
    elapsed = 1000.0 * (time.perf_counter() - start) if timing else 0.0
    return SweepRow(
        param_name=param,  # type: ignore[arg-type]
        param_value=float(value),
        seed=seed,
        lambda1=lambda1,
        lambda2=lambda2,
        gap_qr=gap_qr,
        gap_birkhoff=gap_birkhoff,
        slope_tv=slope_tv,
        slope_ratio_error=slope_ratio,
        n_steps=config.steps,
        wall_time_ms=elapsed,
    )


def sweep(
    config: ExperimentConfig,
    param: SweepParam,
    grid: Sequence[float],
    seeds: Sequence[int],
    n_jobs: int = 1,
    timing: bool = False,
    progress: bool = False,
) -> list[SweepRow]:
    """
    Runs a rate experiment for every (grid value, seed) pair.

    Parameters
    ----------
    config : ExperimentConfig
        The base experiment.
    param : {"drop_rate", "s"}
        The swept parameter.
    grid : Sequence[float]
        Parameter values; drop_rate = 1 is not allowed.
    seeds : Sequence[int]
        Experiment seeds.
    n_jobs : int, optional
        Number of worker processes, by default 1.
    timing : bool, optional
        Whether to measure wall times; they are 0 otherwise.
    progress : bool, optional
        Whether to show a progress bar.

    Returns
    -------
    list[SweepRow]
        Rows in grid-then-seed order, whatever the execution order.
    """
    _check_grid(param, grid)
    if n_jobs < 1:
        raise ConfigError(f"n_jobs ({n_jobs}) must be at least 1.")
    data = config.to_dict()
    tasks = [(data, param, float(value), int(seed), timing) for value in grid for seed in seeds]
    if n_jobs == 1 or len(tasks) <= 1:
        return [
            _run_row(task)
            for task in tqdm(tasks, disable=not progress, desc="sweep")
        ]
    with ProcessPoolExecutor(max_workers=n_jobs) as executor:
        rows = executor.map(_run_row, tasks)
        return list(tqdm(rows, total=len(tasks), disable=not progress, desc="sweep"))


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: Sequence[SweepRow], file: TextIO):
    """Writes the rows with a header line, '\\n' line endings and exact floats."""
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([_format_cell(getattr(row, name)) for name in SWEEP_COLUMNS])


def to_csv(rows: Sequence[SweepRow]) -> str:
    """
    Returns the rows as CSV text.

    Examples
    --------
    >>> to_csv([]).strip() == ",".join(SWEEP_COLUMNS)
    True
    """
    buffer = io.StringIO()
    write_csv(rows, buffer)
    return buffer.getvalue()
