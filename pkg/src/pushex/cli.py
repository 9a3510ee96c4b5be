from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Final, Optional, Sequence

from rich.console import Console

from .errors import ConfigError, DegenerateProcessError, DomainError, EstimatorError
from .experiment import (
    ExperimentConfig,
    check,
    preset,
    print_check_report,
    run_rate_experiment,
    sweep,
    to_csv,
)
from .experiment.presets import PRESETS
from .lyapunov import estimate_top2
from .protocol import run_consensus
from .version import dependency_versions, get_version

console = Console(stderr=True)

EXIT_OK: Final = 0
EXIT_CONFIG_ERROR: Final = 2
EXIT_DEGENERATE: Final = 3
EXIT_ESTIMATOR_FAILURE: Final = 4


def _version_text() -> str:
    lines = [f"pushex {get_version()}"]
    lines += [f"  {name} {version}" for name, version in dependency_versions().items()]
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pushex",
        description="Push-sum consensus simulation and convergence-rate analysis.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=_version_text(),
    )
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("-c", "--config", help="JSON or YAML experiment file.")
    source.add_argument("-p", "--preset", choices=sorted(PRESETS), help="Named experiment.")
    common.add_argument("--steps", type=int, help="Override the number of steps.")
    common.add_argument("--seed", type=int, help="Override the experiment seed.")
    common.add_argument("--drop-rate", type=float, help="Override the drop rate.")
    common.add_argument("-o", "--output", help="Output file; stdout by default.")
    common.add_argument("--progress", action="store_true", help="Show progress bars.")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("simulate", parents=[common], help="One consensus run as CSV.")
    commands.add_parser("lyapunov", parents=[common], help="QR Lyapunov estimates as JSON.")
    commands.add_parser("rates", parents=[common], help="Full rate report as JSON.")

    sweep_parser = commands.add_parser(
        "sweep", parents=[common], help="Rate sweep over drop_rate or s as CSV."
    )
    sweep_parser.add_argument("--param", choices=("drop_rate", "s"), default="drop_rate")
    sweep_parser.add_argument("--grid", type=float, nargs="*", default=[], help="Values.")
    sweep_parser.add_argument("--seeds", type=int, nargs="+", default=None, help="Seeds.")
    sweep_parser.add_argument("-j", "--jobs", type=int, default=1, help="Worker processes.")
    sweep_parser.add_argument("--timing", action="store_true", help="Record wall times.")

    check_parser = commands.add_parser(
        "check", parents=[common], help="Verify the conditions of the rate bounds."
    )
    check_parser.add_argument("--json", action="store_true", help="Print JSON instead.")
    check_parser.add_argument("--horizon", type=int, default=1000)
    check_parser.add_argument("--trials", type=int, default=100)
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Resolves the config file or preset and applies the overrides."""
    if args.preset is not None:
        config = preset(args.preset)
    else:
        config = ExperimentConfig.load_file(args.config)
    overrides = {
        name: value
        for name, value in (
            ("steps", args.steps),
            ("seed", args.seed),
            ("drop_rate", args.drop_rate),
        )
        if value is not None
    }
    return config.replaced(**overrides) if overrides else config


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(text)
    console.print(f"wrote {path}")


def _simulate(config: ExperimentConfig, progress: bool) -> str:
    topology = config.build_topology()
    x0, w0 = config.initial_vectors(topology.p)
    run = run_consensus(
        topology,
        x0,
        w0,
        config.steps,
        seed=config.seed,
        drop_rate=config.drop_rate,
        s=tuple(config.s) if isinstance(config.s, list) else config.s,
        mode=config.mode,
        progress=progress,
    )
    console.print(f"target: {run.target!r}")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("step", "max_ratio_error", "tv_distance"))
    for step, (error, distance) in enumerate(
        zip(run.max_ratio_error, run.tv_distance), start=1
    ):
        writer.writerow(
            (
                step,
                "" if error is None else repr(error),
                "" if distance is None else repr(distance),
            )
        )
    return buffer.getvalue()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the command line and returns the exit code."""
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args)
        output = args.output or config.output_path
        if args.command == "simulate":
            _emit(_simulate(config, args.progress), output)
        elif args.command == "lyapunov":
            estimate = estimate_top2(
                config.build_process(), config.steps, config.seed, progress=args.progress
            )
            _emit(estimate.to_json(indent=2) + "\n", output)
        elif args.command == "rates":
            report = run_rate_experiment(config, progress=args.progress)
            _emit(report.to_json(indent=2) + "\n", output)
        elif args.command == "sweep":
            seeds = args.seeds if args.seeds is not None else [config.seed]
            rows = sweep(
                config,
                args.param,
                args.grid,
                seeds,
                n_jobs=args.jobs,
                timing=args.timing,
                progress=args.progress,
            )
            _emit(to_csv(rows), output)
        elif args.command == "check":
            report = check(
                config,
                horizon=args.horizon,
                psi_trials=args.trials,
                progress=args.progress,
            )
            if args.json:
                _emit(report.to_json(indent=2) + "\n", output)
            else:
                print_check_report(report)
                for line in report.verdict:
                    console.print(line)
    except (ConfigError, DomainError) as e:
        console.print(f"[red]config error:[/red] {e}")
        return EXIT_CONFIG_ERROR
    except DegenerateProcessError as e:
        console.print(f"[red]{e}[/red]")
        return EXIT_DEGENERATE
    except EstimatorError as e:
        console.print(f"[red]estimation failed:[/red] {e}")
        return EXIT_ESTIMATOR_FAILURE
    return EXIT_OK


def main():
    sys.exit(run())
