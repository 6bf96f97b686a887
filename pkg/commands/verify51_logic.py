from core.exporters.report_exporter import format_report_json, write_text
from core.families import build_construction51, verify_construction51
from .utils.spec_source import add_output_arguments, emit_report

LEVEL_COLUMNS = ("k", "log_a", "a", "m", "log_m", "log_r", "claimed_lower_bound", "slack")


def register_verify51_command(subparsers):
    parser = subparsers.add_parser("verify51", help="per-level checks of the recursive all-positive-zero construction")
    variant = parser.add_mutually_exclusive_group()
    variant.add_argument("--rho", type=float, default=0.5, help="order of the construction")
    variant.add_argument("--order1", action="store_true", help="the order-one variant")
    parser.add_argument("--k-max", type=int, default=8, help="levels materialized")
    parser.add_argument("--k-from", type=int, default=1, help="first level checked")
    parser.add_argument("--k-to", type=int, help="last level checked (default k-max)")
    add_output_arguments(parser, csv=True)
    parser.set_defaults(handler=run_verify51)


def run_verify51(args) -> int:
    data = build_construction51(args.rho, args.k_max, order1=args.order1)
    checks = verify_construction51(data, args.k_from, args.k_to)

    report = {"variant": data.variant, "rho": data.rho, "levels": len(data.levels)}
    for check in checks:
        report[f"level_{check.k}"] = check.to_dict()
    report["all_passed"] = all(check.passed for check in checks)

    # the JSON report also carries the materialized levels
    out_json, args.out_json = args.out_json, None
    emit_report(report, args, rows=data.to_rows(), columns=LEVEL_COLUMNS)
    if out_json:
        full = dict(report)
        full["construction"] = data.to_dict()
        write_text(out_json, format_report_json(full))
    return 0
