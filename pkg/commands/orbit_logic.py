from core.analytic.modulus import DEFAULT_SAMPLES
from core.dynamics.orbit import ESCAPE_LOG_DEFAULT, ORBIT_TOLERANCE, PROPERTY_RANGE, classify_property, iterate_min_modulus
from .utils.spec_source import add_output_arguments, add_spec_arguments, emit_report, resolve_spec

ORBIT_COLUMNS = ("step", "log_radius", "log_min_modulus", "status")


def register_orbit_command(subparsers):
    parser = subparsers.add_parser("orbit", help="iterate r -> m(r)")
    add_spec_arguments(parser, tolerance=ORBIT_TOLERANCE)
    start = parser.add_mutually_exclusive_group()
    start.add_argument("--seed", type=float, help="starting radius")
    start.add_argument("--auto-seed", action="store_true", help="search [r-min, r-max] for an escaping seed")
    parser.add_argument("--max-iter", type=int, default=20, help="orbit steps")
    parser.add_argument("--escape-log", type=float, default=ESCAPE_LOG_DEFAULT,
                        help="log-radius whose crossing counts as escape")
    parser.add_argument("--r-min", type=float, default=PROPERTY_RANGE[0], help="lower end of the seed search")
    parser.add_argument("--r-max", type=float, default=PROPERTY_RANGE[1], help="upper end of the seed search")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="angles sampled per circle")
    add_output_arguments(parser, csv=True)
    parser.set_defaults(handler=run_orbit)


def run_orbit(args) -> int:
    spec = resolve_spec(args)

    if args.auto_seed:
        verdict = classify_property(spec, args.r_min, args.r_max, n_samples=args.samples,
                                    tail_tolerance=args.tolerance)
        report = {"function": spec.label(), "verdict": str(verdict)}
        report.update(verdict.to_dict())
        report.pop("witness")
        rows = []
        if verdict.witness is not None:
            orbit = verdict.witness.orbit
            report["seed"] = verdict.witness.seed
            report["log_seed"] = verdict.witness.log_seed
            report["escape_log_threshold"] = verdict.witness.escape_log_threshold
            report["orbit_status"] = str(orbit.status)
            report["strictly_increasing"] = orbit.strictly_increasing
            report["orbit"] = orbit.values
            rows = orbit.to_rows()
        emit_report(report, args, rows=rows, columns=ORBIT_COLUMNS)
        return 0

    seed = args.seed if args.seed is not None else args.r_min
    record = iterate_min_modulus(spec, seed, args.max_iter, args.escape_log, n_samples=args.samples,
                                 tail_tolerance=args.tolerance)
    report = {
        "function": spec.label(),
        "seed": record.seed,
        "status": str(record.status),
        "steps": len(record.values) - 1,
        "strictly_increasing": record.strictly_increasing,
        "final_log_radius": record.values[-1],
        "orbit": record.values,
    }
    emit_report(report, args, rows=record.to_rows(), columns=ORBIT_COLUMNS)
    return 0
