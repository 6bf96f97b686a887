import math

from core.errors import ConfigError
from core.analytic.modulus import (
    DEFAULT_GRID_RATIO,
    DEFAULT_SAMPLES,
    circle_profile,
    cos_pi_rho_check,
    log_convexity_check,
    tilde_min_log,
)
from .utils.spec_source import add_output_arguments, add_spec_arguments, emit_report, resolve_spec

SAMPLE_COLUMNS = ("r", "theta", "log_modulus")


def register_modulus_command(subparsers):
    parser = subparsers.add_parser("modulus", help="minimum and maximum modulus on a circle")
    add_spec_arguments(parser)
    parser.add_argument("--r", type=float, help="circle radius")
    parser.add_argument("--log-r", type=float, help="log of the radius, for radii beyond float range")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="angles sampled on [0, pi]")
    parser.add_argument("--no-shortcut", action="store_true", help="sample even when the extremal angles are known")
    parser.add_argument("--tilde", action="store_true", help="also report log tilde-m(r)")
    parser.add_argument("--grid-ratio", type=float, default=DEFAULT_GRID_RATIO, help="radius grid ratio of tilde-m")
    parser.add_argument("--convexity", type=float, metavar="C", help="report log M(r^C) - C log M(r)")
    parser.add_argument("--cos-pi-rho", type=float, metavar="EPS", help="look for m(s) >= M(r^EPS) on (r^EPS, r)")
    add_output_arguments(parser, csv=True)
    parser.set_defaults(handler=run_modulus)


def run_modulus(args) -> int:
    if (args.r is None) == (args.log_r is None):
        raise ConfigError("modulus needs exactly one of --r and --log-r")
    if args.r is not None and not args.r > 0:
        raise ConfigError(f"--r must be positive, got {args.r}")
    log_r = math.log(args.r) if args.r is not None else args.log_r
    spec = resolve_spec(args)

    profile = circle_profile(spec, n_samples=args.samples, log_r=log_r, tail_tolerance=args.tolerance,
                             use_symmetry_shortcut=not args.no_shortcut)
    report = {"function": spec.label()}
    report.update(profile.to_dict())
    if args.tilde:
        report["tilde_min_log"] = tilde_min_log(spec, grid_ratio=args.grid_ratio, log_r=log_r, n_samples=args.samples,
                                                tail_tolerance=args.tolerance)
    if args.convexity is not None:
        report["convexity"] = log_convexity_check(spec, c=args.convexity, log_r=log_r)
    if args.cos_pi_rho is not None:
        report["cos_pi_rho"] = cos_pi_rho_check(spec, eps=args.cos_pi_rho, log_r=log_r,
                                                grid_ratio=args.grid_ratio)
    emit_report(report, args, rows=profile.sample_rows(), columns=SAMPLE_COLUMNS)
    return 0
