"""
Shared argument groups of the subcommands: where the spec comes from and where
reports go.
"""
import argparse
import logging
from typing import Optional

from core.errors import ConfigError
from core.families import FAMILY_NAMES, family_by_name
from core.analytic.hadamard import square_substitute
from core.exporters.report_exporter import format_report_json, format_report_lines, format_rows_to_csv, write_text
from core.models.functions import EntireFunctionSpec
from core.spec_parser import read_spec_file

logger = logging.getLogger(__name__)


def parse_complex(text: str) -> complex:
    """Accepts Python complex literals and the `i` spelling (`1+2i`, `-3i`, `0.25`)."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a complex number") from None


def add_spec_arguments(parser: argparse.ArgumentParser, tolerance: Optional[float] = 1e-8):
    group = parser.add_argument_group("function")
    group.add_argument("--family", choices=sorted(FAMILY_NAMES), help="built-in family")
    group.add_argument("--spec-file", help="key-value spec file")
    group.add_argument("--sigma", type=float, help="Hardy exponent (> 1)")
    group.add_argument("--alpha", type=float, help="Lindelof exponent in (1, 2)")
    group.add_argument("--rho", type=float, help="construction order in (0, 1)")
    group.add_argument("--s", type=float, help="genus-power exponent in (0, 1)")
    group.add_argument("--symmetric", action="store_true", help="mirror genus-power zeros to +-k^s")
    group.add_argument("--square", action="store_true", help="use f(z^2) instead of f")
    if tolerance is not None:
        group.add_argument("--tolerance", type=float, default=tolerance, help="tail tolerance of evaluation")


def resolve_spec(args) -> EntireFunctionSpec:
    """
    Builds the spec named by --family or --spec-file.

    Args:
        args: parsed namespace from a parser set up by add_spec_arguments.

    Returns:
        EntireFunctionSpec, square-substituted when --square is given.
    """
    if bool(args.family) == bool(args.spec_file):
        raise ConfigError("exactly one of --family and --spec-file is required")
    if args.spec_file:
        spec = read_spec_file(args.spec_file)
    else:
        spec = family_by_name(args.family, sigma=args.sigma, alpha=args.alpha, rho=args.rho, s=args.s,
                              symmetric=args.symmetric or None)
    if args.square:
        spec = square_substitute(spec)
    logger.info("using %s", spec.label())
    return spec


def add_output_arguments(parser: argparse.ArgumentParser, csv: bool = False):
    group = parser.add_argument_group("output")
    group.add_argument("--out-json", help="write the report as JSON")
    if csv:
        group.add_argument("--out-csv", help="write the tabular rows as CSV")


def emit_report(report: dict, args, rows=None, columns=None):
    """Prints `key: value` lines and writes the optional JSON and CSV outputs."""
    print(format_report_lines(report), end="")
    if getattr(args, "out_json", None):
        write_text(args.out_json, format_report_json(report))
        logger.info("wrote %s", args.out_json)
    if getattr(args, "out_csv", None) and rows is not None:
        write_text(args.out_csv, format_rows_to_csv(rows, columns))
        logger.info("wrote %s", args.out_csv)


def require(args, *names: str):
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise ConfigError(f"{args.command} needs {', '.join(missing)}")
