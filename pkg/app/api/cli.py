"""
Command Line Interface

Subcommands analyze, sweep, optimize, rank, validate and dump-defaults.
Every command loads one RunConfig, runs a use case, prints a table on stdout
and writes its result files from this single place. Domain errors map onto
exit codes.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from app.api.models import OutputFormat, RunConfig
from app.application.dtos.reports import sweep_columns
from app.application.use_cases.analyze import analyze
from app.application.use_cases.optimize import run_optimization
from app.application.use_cases.rank import run_rank
from app.application.use_cases.sweep import run_sweep
from app.application.use_cases.validate import run_validation
from app.config import settings
from app.domain.exceptions import (
    ConfigError,
    CycleToolError,
    DegenerateColumnError,
    FuelNotFoundError,
    InfeasibleCycleError,
    InvalidRatioError,
    NotApplicableError,
    OutOfRangeError,
    UndefinedMetricError,
)
from app.infrastructure.persistence.config_loader import (
    default_fuel_file,
    dump_run_config,
    load_run_config,
)
from app.infrastructure.persistence.fuel_repository_impl import FuelRepositoryImpl
from app.infrastructure.persistence.result_repository_impl import FileResultRepository
from app.infrastructure.workers.evaluation_pool import EvaluationPool

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_VALIDATION = 4
EXIT_NO_FEASIBLE_DESIGN = 5

_INPUT_ERRORS = (ConfigError, OutOfRangeError, FuelNotFoundError, NotApplicableError, DegenerateColumnError)
_CYCLE_ERRORS = (InvalidRatioError, InfeasibleCycleError, UndefinedMetricError)


def exit_code_for(error: BaseException) -> int:
    """Exit status of a failed command"""
    if isinstance(error, _INPUT_ERRORS):
        return EXIT_CONFIG
    if isinstance(error, _CYCLE_ERRORS):
        return EXIT_INFEASIBLE
    return EXIT_UNEXPECTED


def _revalidate(model, **changes):
    """Copy of a pydantic model with changes passed through validation"""
    data = model.model_dump()
    data.update(changes)
    try:
        return type(model).model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"]) or None
        raise ConfigError(f"command-line override rejected: {first['msg']}", field=field)


# Config assembly

def load_config(args: argparse.Namespace) -> RunConfig:
    """Config file (or defaults) with command-line overrides applied"""
    config = load_run_config(args.config) if args.config else RunConfig()

    output = {}
    if args.output:
        output["path"] = args.output
    output_format = args.format or (None if args.config else settings.DEFAULT_OUTPUT_FORMAT)
    if output_format:
        output["format"] = output_format
    if output:
        config = config.model_copy(update={"output": _revalidate(config.output, **output)})

    optimize = {}
    seed = args.seed if args.seed is not None else (None if args.config else settings.DEFAULT_SEED)
    if seed is not None or getattr(args, "generations", None) or getattr(args, "population", None):
        ga = {}
        if seed is not None:
            ga["seed"] = seed
        if getattr(args, "generations", None):
            ga["generations"] = args.generations
        if getattr(args, "population", None):
            ga["population_size"] = args.population
        optimize["ga"] = _revalidate(config.optimize.ga, **ga)
    if getattr(args, "case", None):
        optimize["case"] = args.case
    if getattr(args, "oracle_points", None) is not None:
        optimize["oracle_points"] = args.oracle_points
    if optimize:
        config = config.model_copy(update={"optimize": _revalidate(config.optimize, **optimize)})

    top = {}
    if getattr(args, "fuel", None):
        top["fuel"] = args.fuel
    if getattr(args, "condition", None):
        top["flight"] = args.condition
    if top:
        config = _revalidate(config, **top)
    if getattr(args, "delta_T", None) is not None:
        config = config.model_copy(update={"flight": config.flight.with_delta_T(args.delta_T)})
    return config


def _fuels(config: RunConfig) -> FuelRepositoryImpl:
    return FuelRepositoryImpl(default_fuel_file(config))


def _print_table(title: str, rows: List[dict]) -> None:
    print(f"\n{title}")
    print(pd.DataFrame(rows).to_string(index=False))


# Commands

def cmd_analyze(args: argparse.Namespace) -> int:
    config = load_config(args)
    report = analyze(config, _fuels(config))
    results = FileResultRepository(config.output.path)

    _print_table("Stations", report.stations.to_rows())
    _print_table("Power ledger", report.ledger_rows())
    _print_table("Performance", report.performance_rows())
    _print_table("Exergy", report.exergy.to_rows())
    if report.changes:
        _print_table(f"Change vs delta_T = {report.reference_delta_T} K", report.change_rows())

    results.save_table("stations.csv", report.stations.to_rows())
    results.save_table("exergy.csv", report.exergy.to_rows())
    if config.output.format == OutputFormat.JSON:
        results.save_json("analyze.json", report.model_dump(mode="json"))
    else:
        results.save_table("analyze.csv", report.performance_rows())
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args)
    fuels = _fuels(config)
    with EvaluationPool(args.jobs or settings.DEFAULT_JOBS) as pool:
        rows = run_sweep(config, fuels, map_fn=pool.map)

    records = [row.to_record() for row in rows]
    results = FileResultRepository(config.output.path)
    summary_columns = ["condition", "delta_T_K", "fuel", "thrust_kN", "tsfc_g_per_kNs", "snox",
                       "entropy_generation_kW_per_K", "error"]
    _print_table("Sweep", [{k: r.get(k) for k in summary_columns} for r in records])
    if config.output.format == OutputFormat.JSON:
        results.save_json("sweep.json", {"rows": records})
    else:
        results.save_table("sweep.csv", records, columns=sweep_columns())
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    config = load_config(args)
    fuels = _fuels(config)
    with EvaluationPool(args.jobs or settings.DEFAULT_JOBS) as pool:
        report = run_optimization(config, fuels, map_fn=pool.map)

    results = FileResultRepository(config.output.path)
    _print_table("Optimized cases", report.comparison_rows())
    results.save_json("optimize.json", report.model_dump(mode="json"))
    if config.output.format == OutputFormat.CSV:
        results.save_table("optimize.csv", report.comparison_rows())
        history = [
            {"case": outcome.label, "generation": i + 1, "best_fitness": value}
            for outcome in report.outcomes
            for i, value in enumerate(outcome.ga.history)
        ]
        results.save_table("optimize_history.csv", history)

    if not report.any_feasible:
        logger.error("No design satisfies the constraint bands; least-violating designs reported")
        return EXIT_NO_FEASIBLE_DESIGN
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    config = load_config(args)
    report = run_rank(config)
    results = FileResultRepository(config.output.path)
    _print_table("TOPSIS ranking", report.to_rows())
    if config.output.format == OutputFormat.JSON:
        results.save_json("rank.json", report.model_dump(mode="json"))
    else:
        results.save_table("rank.csv", report.to_rows())
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    config = load_config(args)
    if args.with_optimization:
        with EvaluationPool(args.jobs or settings.DEFAULT_JOBS) as pool:
            report = run_validation(config.engine, optimization=config.optimize.ga,
                                    oracle_points=config.optimize.oracle_points, map_fn=pool.map)
    else:
        report = run_validation(config.engine)
    results = FileResultRepository(config.output.path)
    _print_table("Validation", report.to_rows())
    if config.output.format == OutputFormat.JSON:
        results.save_json("validate.json", {"passed": report.passed, "checks": report.to_rows()})
    else:
        results.save_table("validate.csv", report.to_rows())
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_dump_defaults(args: argparse.Namespace) -> int:
    config = load_run_config(args.config) if args.config else RunConfig()
    text = dump_run_config(config)
    if args.output:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote default config to {path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "rank": cmd_rank,
    "validate": cmd_validate,
    "dump-defaults": cmd_dump_defaults,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"run config YAML; bare names are also searched in {settings.CYCLE_CONFIG_DIR}")
    common.add_argument("--output", help="result directory (a file path for dump-defaults)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="main result file format")
    common.add_argument("--seed", type=int, help="GA random seed")
    common.add_argument("--jobs", type=int, help="worker processes for sweeps and optimization")
    common.add_argument("--log-level", help="logging level, e.g. DEBUG")

    parser = argparse.ArgumentParser(
        prog=settings.TOOL_NAME,
        description="Turbofan design-point cycle, exergy, optimization and ranking toolkit",
    )
    parser.add_argument("--version", action="version", version=f"{settings.TOOL_NAME} {settings.TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze_parser = sub.add_parser("analyze", parents=[common], help="single design-point cycle")
    analyze_parser.add_argument("--fuel", help="fuel name or alias")
    analyze_parser.add_argument("--condition", help="flight condition preset (take_off, on_design)")
    analyze_parser.add_argument("--delta-T", dest="delta_T", type=float, help="inlet temperature change (K)")

    sub.add_parser("sweep", parents=[common], help="inlet temperature change and fuel sweep")

    optimize_parser = sub.add_parser("optimize", parents=[common], help="GA optimization with grid cross-check")
    optimize_parser.add_argument("--case", help="1, 2, 3, a case name, or all")
    optimize_parser.add_argument("--generations", type=int)
    optimize_parser.add_argument("--population", type=int)
    optimize_parser.add_argument("--oracle-points", dest="oracle_points", type=int,
                                 help="grid points per axis, 0 skips the oracle")

    sub.add_parser("rank", parents=[common], help="TOPSIS ranking of optimized cases")
    validate_parser = sub.add_parser("validate", parents=[common], help="check the model against reference values")
    validate_parser.add_argument("--with-optimization", dest="with_optimization", action="store_true",
                                 help="also run the GA, grid oracle and baseline-improvement checks")
    validate_parser.add_argument("--generations", type=int)
    validate_parser.add_argument("--population", type=int)
    validate_parser.add_argument("--oracle-points", dest="oracle_points", type=int,
                                 help="grid points per axis, 0 skips the oracle comparison")
    sub.add_parser("dump-defaults", parents=[common], help="write the complete default config as YAML")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit status"""
    args = build_parser().parse_args(argv)
    if args.log_level:
        level = getattr(logging, args.log_level.upper(), None)
        if not isinstance(level, int):
            logger.error(f"Unknown log level {args.log_level}")
            return EXIT_CONFIG
        logging.getLogger().setLevel(level)
    if args.jobs is not None and args.jobs < 1:
        logger.error("--jobs must be at least 1")
        return EXIT_CONFIG

    logger.info(f"{settings.TOOL_NAME} v{settings.TOOL_VERSION}: {args.command}")
    try:
        return COMMANDS[args.command](args)
    except CycleToolError as e:
        logger.error(f"{args.command} failed: {e}")
        return exit_code_for(e)
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        return EXIT_UNEXPECTED
