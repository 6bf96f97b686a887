"""
`lemmas` subcommands: the product recurrence and the primary-factor decay rays.
"""
import numpy as np

from core.errors import ConfigError
from core.analytic.lemmas import (
    finite_difference_error,
    prodL_sequence,
    ray_profile,
    sign_conditions_hold,
    theta_candidates,
    tight_instance,
)
from .utils.spec_source import add_output_arguments, emit_report, require

RAY_COLUMNS = ("T", "log_E", "derivative")


def register_lemmas_command(subparsers):
    parser = subparsers.add_parser("lemmas", help="numerical checks of the standalone lemmas")
    kinds = parser.add_subparsers(dest="kind", metavar="KIND", required=True)

    prodl = kinds.add_parser("prodl", help="L_n recurrence along a radius sequence")
    prodl.add_argument("--tight", action="store_true", help="use the consecutive instance log r_k = 1600 * 16^k")
    prodl.add_argument("--k", type=int, default=20, help="length of the tight instance")
    prodl.add_argument("--log-r", type=float, nargs="+", help="log r_0, log r_1, ...")
    prodl.add_argument("--indices", type=int, nargs="+", default=[], help="subsequence indices n_k")
    add_output_arguments(prodl)
    prodl.set_defaults(handler=run_prodl)

    angles = kinds.add_parser("angles", help="candidate decay angles of E(z, m)")
    angles.add_argument("--m", type=int, help="factor index (>= 2)")
    add_output_arguments(angles)
    angles.set_defaults(handler=run_angles)

    ray = kinds.add_parser("ray", help="log|E(T e^{i theta}, m)| along a candidate ray")
    ray.add_argument("--m", type=int, help="factor index (>= 2)")
    ray.add_argument("--theta", type=float, help="angle; default is the candidate picked by --index")
    ray.add_argument("--index", type=int, default=0, help="position in the candidate list")
    ray.add_argument("--t-max", type=float, default=100.0, help="grid covers [-t-max, t-max]")
    ray.add_argument("--points", type=int, default=2001, help="grid points")
    add_output_arguments(ray, csv=True)
    ray.set_defaults(handler=run_ray)


def run_prodl(args) -> int:
    if args.tight == (args.log_r is not None):
        raise ConfigError("prodl needs exactly one of --tight and --log-r")
    instance = tight_instance(args.k) if args.tight else prodL_sequence(args.log_r, args.indices)
    report = {
        "terms": len(instance.subsequence_indices),
        "min_L": instance.min_L,
        "lower_bound": instance.lower_bound,
        "final_L": instance.L_sequence[-1],
        "verdict": "PASS" if instance.passed else "FAIL",
    }
    emit_report(report, args)
    return 0


def run_angles(args) -> int:
    require(args, "m")
    candidates = theta_candidates(args.m)
    report = {
        "m": args.m,
        "candidates": candidates,
        "sign_conditions": [sign_conditions_hold(args.m, t) for t in candidates],
    }
    emit_report(report, args)
    return 0


def run_ray(args) -> int:
    require(args, "m")
    if args.theta is None:
        candidates = theta_candidates(args.m)
        if not 0 <= args.index < len(candidates):
            raise ConfigError(f"--index must lie in 0..{len(candidates) - 1} for m = {args.m}")
        theta = candidates[args.index]
    else:
        theta = args.theta
    if args.points < 2 or not args.t_max > 0:
        raise ConfigError("--points must be >= 2 and --t-max positive")
    profile = ray_profile(args.m, theta, np.linspace(-args.t_max, args.t_max, args.points))
    report = profile.to_dict()
    report["finite_difference_error"] = finite_difference_error(profile)
    emit_report(report, args, rows=profile.to_rows(), columns=RAY_COLUMNS)
    return 0
