"""
dtnsim command-line entry point.

Subcommands:
  run       simulate one scenario and write its reports
  sweep     run a scenario once per value of one axis
  genmap    write the synthetic three-zone map files
  plot      render timeline / hop-histogram figures from report CSVs
  validate  check a scenario file and list every violation

Exit status: 0 success, 1 usage or scenario errors, 2 runtime errors.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dtnsim.core.config import get_settings
from dtnsim.core.errors import (
    DTNSimError,
    ScenarioParseError,
    ScenarioValidationError,
    SweepAxisError,
)

logger = logging.getLogger("dtnsim")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage with exit status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtnsim", description="Delay-tolerant network rescue-scenario simulator")
    parser.add_argument("--log-level", default=None, help="overrides DTNSIM_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run_cmd = commands.add_parser("run", help="simulate one scenario")
    run_cmd.add_argument("-s", "--scenario", required=True, type=Path)
    run_cmd.add_argument("--seed", type=int)
    run_cmd.add_argument("--router", choices=["epidemic", "snw"])
    run_cmd.add_argument("--out", type=Path)
    run_cmd.add_argument("--trace", action="store_true", help="also write contacts.csv and events.csv")

    sweep_cmd = commands.add_parser("sweep", help="run one scenario per axis value")
    sweep_cmd.add_argument("-s", "--scenario", required=True, type=Path)
    sweep_cmd.add_argument("--axis", required=True)
    sweep_cmd.add_argument("--values", required=True, help="comma-separated, e.g. 10M,50M,100M")
    sweep_cmd.add_argument("--seed", type=int)
    sweep_cmd.add_argument("--out", type=Path)
    sweep_cmd.add_argument("--trace", action="store_true")

    genmap_cmd = commands.add_parser("genmap", help="write the synthetic map files")
    genmap_cmd.add_argument("--world", default="4500x3400", help="WIDTHxHEIGHT in meters")
    genmap_cmd.add_argument("--seed", type=int, default=1)
    genmap_cmd.add_argument("--jitter", type=float, help="overrides DTNSIM_GENMAP_JITTER")
    genmap_cmd.add_argument("--out", type=Path, default=Path("maps"))

    plot_cmd = commands.add_parser("plot", help="figures from timeline.csv / hops.csv")
    source = plot_cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--timeline", nargs="+", type=Path)
    source.add_argument("--hops", nargs="+", type=Path)
    plot_cmd.add_argument("--out", type=Path, help="output path without extension")

    validate_cmd = commands.add_parser("validate", help="list scenario violations")
    validate_cmd.add_argument("-s", "--scenario", required=True, type=Path)
    return parser


# --- Subcommands ---

def _load(args):
    from dtnsim.scenario.parser import load_scenario

    scenario = load_scenario(args.scenario)
    update = {}
    if getattr(args, "seed", None) is not None:
        update["seed"] = args.seed
    if getattr(args, "router", None) is not None:
        update["router"] = scenario.router.model_copy(update={"variant": args.router})
    return scenario.model_copy(update=update) if update else scenario


def _cmd_run(args) -> int:
    from dtnsim.engine.runner import run

    result = run(_load(args), args.out, trace=args.trace)
    for name, path in result.reports.items():
        print(f"{name}: {path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from dtnsim.engine.runner import sweep
    from dtnsim.scenario.parser import parse_list

    results = sweep(_load(args), args.axis, parse_list(args.values), args.out, trace=args.trace)
    for result in results:
        print(f"{result.scenario_id}: delivered={result.summary.delivered}/{result.summary.created}")
    return EXIT_OK


def _cmd_genmap(args) -> int:
    from dtnsim.mobility.synthetic import MapLayout, write_synthetic_map

    try:
        width, height = (float(part) for part in args.world.lower().split("x"))
    except ValueError:
        raise UsageError(f"--world must look like 4500x3400, got '{args.world}'")
    jitter = args.jitter if args.jitter is not None else get_settings().GENMAP_JITTER
    try:
        layout = MapLayout.for_world(width, height, jitter)
    except ValueError as e:
        raise UsageError(str(e))
    for path in write_synthetic_map(args.out, layout, args.seed):
        print(path)
    return EXIT_OK


def _cmd_plot(args) -> int:
    from dtnsim.metrics.plot import plot_hops, plot_timelines

    if args.timeline:
        png, dat = plot_timelines(args.timeline, args.out or Path("timeline"))
    else:
        png, dat = plot_hops(args.hops, args.out or Path("hops"))
    print(png)
    print(dat)
    return EXIT_OK


def _cmd_validate(args) -> int:
    from dtnsim.scenario.validation import validate

    violations = validate(_load(args))
    if violations:
        for violation in violations:
            print(violation, file=sys.stderr)
        return EXIT_USAGE
    print(f"{args.scenario}: OK")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "genmap": _cmd_genmap,
    "plot": _cmd_plot,
    "validate": _cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"dtnsim: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.log_level or settings.LOG_LEVEL)

    try:
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"dtnsim: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioValidationError as e:
        for violation in e.violations:
            print(violation, file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioParseError, SweepAxisError) as e:
        print(f"dtnsim: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DTNSimError, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
