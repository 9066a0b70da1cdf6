"""
hsl-verify command-line entry point.
Presentation Layer - CLI Package

Subcommands: list, verify, sweep, dump-fields, variation.
Exit codes: 0 pass, 1 check failure, 2 bad parameter or unsupported request,
3 numerical abort, 4 I/O failure.
"""

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError

from infrastructure.config.settings import get_settings
from infrastructure.errors import BadParameter, VerificationError
from infrastructure.logging_config import configure_logging
from infrastructure.storage.report_storage import ReportStorage
from presentation.cli import commands
from presentation.cli.config_loader import (
    load_config,
    merge,
    parse_assignments,
    parse_domain,
    parse_grid,
    parse_params,
    parse_range,
)
from presentation.schemas.run_schemas import RunConfig, SweepConfig

logger = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--entry", help="catalog entry id (see 'list')")
    parent.add_argument(
        "--param", action="append", metavar="NAME=VALUE", help="parameter value; repeatable"
    )
    parent.add_argument("--grid", help="nodes per axis, NxM")
    parent.add_argument("--domain", help="sampling rectangle x0:x1:y0:y1")
    parent.add_argument("--profile", help="tolerance profile: strict, default or sweep")
    parent.add_argument("--out", help="output file (relative paths go under HSL_OUTPUT_DIR)")
    parent.add_argument("--config", help="TOML file with the same keys as the flags")
    parent.add_argument("--timing", action="store_true", default=None, help="record wall_ms in the report")
    parent.add_argument("--log-level", help="logging level, overrides HSL_LOG_LEVEL")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="hsl-verify",
        description="Verify Hamiltonian-stationary Lagrangian surfaces in C^2, CP^2 and CH^2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    sub.add_parser("list", help="list catalog entries and their constraints")
    sub.add_parser("verify", parents=[common], help="run the check suite on one entry")
    sub.add_parser(
        "sweep", parents=[common], help="run the checks over parameter ranges (--param name=start:stop:step)"
    )
    sub.add_parser("dump-fields", parents=[common], help="write per-node fields as CSV")
    variation = sub.add_parser("variation", parents=[common], help="first-variation oracle for C^2 entries")
    variation.add_argument("--seed", type=int, help="seed for bump placement")
    variation.add_argument("--bumps", type=int, help="number of bumps")
    variation.add_argument("--step", type=float, help="deformation step h")
    return parser


def _validated(model: Any, **fields: Any) -> Any:
    try:
        return model(**fields)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ())) or "config"
        raise BadParameter(f"{where}: {first['msg']}") from None


def _run_fields(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    settings = get_settings()
    entry = merge(args.entry, config, "entry", None)
    if not entry:
        raise BadParameter("--entry is required (see 'hsl-verify list')")
    return {
        "entry": entry,
        "grid": parse_grid(merge(args.grid, config, "grid", settings.default_grid)),
        "domain": parse_domain(merge(args.domain, config, "domain", None)),
        "profile": merge(args.profile, config, "profile", settings.profile),
        "out": merge(args.out, config, "out", None),
        "timing": bool(merge(args.timing, config, "timing", False)),
    }


def run_config(args: argparse.Namespace, config: Dict[str, Any]) -> RunConfig:
    """Flags over TOML over environment over defaults."""
    fields = _run_fields(args, config)
    file_params = {str(k): str(v) for k, v in config.get("params", {}).items()}
    file_params.update(parse_assignments(args.param))
    fields["params"] = parse_params([f"{k}={v}" for k, v in file_params.items()])
    for name in ("seed", "bumps", "step"):
        value = merge(getattr(args, name, None), config, name, None)
        if value is not None:
            fields[name] = value
    return _validated(RunConfig, **fields)


def sweep_config(args: argparse.Namespace, config: Dict[str, Any]) -> SweepConfig:
    fields = _run_fields(args, config)
    specs = {str(k): str(v) for k, v in config.get("params", {}).items()}
    specs.update(parse_assignments(args.param))
    fields["ranges"] = {name: tuple(parse_range(spec, name)) for name, spec in specs.items()}
    return _validated(SweepConfig, **fields)


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "list":
        return commands.cmd_list()

    config = load_config(args.config)
    storage = ReportStorage()
    if args.command == "verify":
        return commands.cmd_verify(run_config(args, config), storage)
    if args.command == "sweep":
        return commands.cmd_sweep(sweep_config(args, config), storage)
    if args.command == "dump-fields":
        return commands.cmd_dump_fields(run_config(args, config), storage)
    if args.command == "variation":
        return commands.cmd_variation(run_config(args, config), storage)
    raise BadParameter(f"unknown command '{args.command}'")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map errors to exit codes.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when omitted

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        level = getattr(args, "log_level", None) or get_settings().log_level
        try:
            configure_logging(level)
        except ValueError:
            raise BadParameter(f"unknown log level '{level}'") from None
        return _dispatch(args)
    except VerificationError as e:
        logger.debug("%s: %s", type(e).__name__, e.message)
        print(f"❌ {e.message}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
