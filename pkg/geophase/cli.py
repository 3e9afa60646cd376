"""
geophase command line: single-point phases, theta sweeps, the figure
datasets and the validation suite.

All CSV goes to files or stdout; logs and diagnostics go to stderr.

Exit codes: 0 success, 1 validation checks failed, 2 usage or input error,
3 output could not be written.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from .config_loader import ValidationSettings, load_figure_datasets
from .exceptions import GeoPhaseError, OutputError
from .models.params import ModelKind, ModelParams
from .models.results import QuadratureConfig, SweepSpec
from .services.phase import phase_closed
from .services.sweeps import figure_table, run_sweep, sweep_table
from .services.validation import CheckStatus, ValidationReport, ValidationSuite
from .utils.csv_output import PHASE_COLUMNS, figure_header, phase_row, write_csv
from .utils.logging_config import LoggerFactory, setup_logging
from .utils.validators import InputValidator

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2
EXIT_OUTPUT = 3

logger = LoggerFactory.create_logger(__name__)


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("model")
    group.add_argument(
        "--model", required=True, choices=[k.value for k in ModelKind],
        help="Evolution model",
    )
    group.add_argument("--gamma2", type=float, help="Markovian decay rate (markovian)")
    group.add_argument("--gamma", type=float, help="Correlated rate or kernel inverse memory time")
    group.add_argument("--gamma0", type=float, help="Coupling rate (memory, post)")
    group.add_argument("--omega", type=float, default=1.0, help="Transition frequency (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="Geometric phase of a dissipative two-level atom under four open-system models",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", default="warning", choices=["debug", "info", "warning", "error"],
        help="Console log level (default: warning)",
    )
    parser.add_argument("--log-dir", help="Also write a run log into this directory")

    subparsers = parser.add_subparsers(dest="command", required=True)

    cmd_phase = subparsers.add_parser("phase", help="Phase at a single polar angle")
    _add_model_flags(cmd_phase)
    cmd_phase.add_argument("--theta", required=True, help="Polar angle: radians or e.g. 0.5pi")
    cmd_phase.add_argument("--steps", type=int, default=2000, help="Simpson steps (even, default: 2000)")
    cmd_phase.add_argument("--periods", type=int, default=1, help="Quasi-periods to integrate over (default: 1)")
    cmd_phase.add_argument("--output", default="-", help="CSV destination, '-' for stdout")

    cmd_sweep = subparsers.add_parser("sweep", help="Phase over a uniform theta grid")
    _add_model_flags(cmd_sweep)
    cmd_sweep.add_argument("--theta-start", default="0.01pi", help="First theta (default: 0.01pi)")
    cmd_sweep.add_argument("--theta-end", default="0.99pi", help="Last theta (default: 0.99pi)")
    cmd_sweep.add_argument("--theta-count", type=int, default=99, help="Grid points (default: 99)")
    cmd_sweep.add_argument("--steps", type=int, default=2000, help="Simpson steps (even, default: 2000)")
    cmd_sweep.add_argument("--output", default="-", help="CSV destination, '-' for stdout")
    cmd_sweep.add_argument("--threads", type=int, default=1, help="Worker threads (default: 1)")

    cmd_figures = subparsers.add_parser("figures", help="Write the six figure datasets")
    cmd_figures.add_argument("--output", required=True, help="Directory for the CSV files")
    cmd_figures.add_argument("--threads", type=int, default=1, help="Worker threads (default: 1)")

    cmd_validate = subparsers.add_parser("validate", help="Run the oracle and limit checks")
    cmd_validate.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="NAME=VALUE",
        help="Override one tolerance; repeatable",
    )
    cmd_validate.add_argument("--quick", action="store_true", help="Shorter spans and coarser grids")
    cmd_validate.add_argument("--threads", type=int, default=1, help="Worker threads for figure sweeps")

    return parser


def _model_from_args(args: argparse.Namespace) -> ModelParams:
    return ModelParams.from_flags(
        args.model,
        gamma2=args.gamma2,
        gamma=args.gamma,
        gamma0=args.gamma0,
        omega=args.omega,
    )


def cmd_phase(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    theta = InputValidator.parse_theta(args.theta)
    result = phase_closed(model, theta, QuadratureConfig(steps=args.steps), periods=args.periods)
    write_csv(args.output, PHASE_COLUMNS, [phase_row(model, theta, result)])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(
        model=_model_from_args(args),
        theta_start=InputValidator.parse_theta(args.theta_start),
        theta_end=InputValidator.parse_theta(args.theta_end),
        theta_count=args.theta_count,
        steps=args.steps,
    )
    rows = run_sweep(spec, threads=args.threads)
    write_csv(args.output, PHASE_COLUMNS, sweep_table(spec, rows))
    if args.output != "-":
        logger.info("Sweep written", path=args.output, rows=len(rows))
    return EXIT_OK


def cmd_figures(args: argparse.Namespace) -> int:
    directory = Path(args.output)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"Cannot create {directory}: {exc}") from exc

    for dataset in load_figure_datasets():
        names = [curve.name for curve in dataset.curves]
        sweeps = [run_sweep(dataset.sweep_spec(curve), threads=args.threads) for curve in dataset.curves]
        path = directory / f"{dataset.name}.csv"
        write_csv(path, figure_header(names), figure_table(names, sweeps))
        logger.info("Figure dataset written", path=str(path), curves=len(names))
    return EXIT_OK


def render_report(report: ValidationReport, console: Console) -> None:
    table = Table(title="geophase validation")
    table.add_column("check")
    table.add_column("status")
    table.add_column("measured", justify="right")
    table.add_column("limit", justify="right")
    table.add_column("detail")

    styles = {CheckStatus.PASS: "green", CheckStatus.FAIL: "bold red", CheckStatus.INFO: "cyan"}
    for result in report.results:
        table.add_row(
            escape(result.name),
            f"[{styles[result.status]}]{result.status.value}[/]",
            f"{result.measured:.3g}",
            "" if result.limit is None else f"{result.limit:.3g}",
            escape(result.detail),
        )
    console.print(table)

    for failure in report.failures:
        console.print(f"FAIL {escape(failure.name)}: {escape(failure.detail)}", highlight=False)
    summary = "PASS" if report.passed else f"FAIL ({len(report.failures)} failing)"
    console.print(f"{len(report.results)} checks, {summary}", highlight=False)


def cmd_validate(args: argparse.Namespace) -> int:
    settings = ValidationSettings.from_yaml().with_overrides(args.overrides)
    suite = ValidationSuite(settings, load_figure_datasets(), quick=args.quick, threads=args.threads)
    report = suite.run()
    render_report(report, Console())
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


COMMANDS = {
    "phase": cmd_phase,
    "sweep": cmd_sweep,
    "figures": cmd_figures,
    "validate": cmd_validate,
}


# @agent:service-type entry-point
# @agent:complexity low
# @agent:side-effects file_write,stdout
def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(args.log_level, args.log_dir)
    try:
        return COMMANDS[args.command](args)
    except OutputError as exc:
        logger.error("Output failed", error=str(exc))
        print(f"geophase: error: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    except GeoPhaseError as exc:
        logger.error("Invalid input", command=args.command, error=str(exc))
        print(f"geophase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
