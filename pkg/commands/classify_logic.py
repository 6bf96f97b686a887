"""
`classify` subcommands: growth order, genus, deficiency, decay rays, the escape
property and its equivalent proxies, and the zero-counting functions.
"""
from core.analytic.classify import (
    characteristic_T,
    compute_genus,
    counting_N,
    counting_n,
    decay_candidates,
    decay_ray_scan,
    defect_zero,
    estimate_order,
)
from core.analytic.hadamard import is_laguerre_polya
from core.dynamics.orbit import PROPERTY_RANGE, check_equivalences, classify_property, v_condition_power
from .utils.spec_source import add_output_arguments, add_spec_arguments, emit_report, require, resolve_spec


def register_classify_command(subparsers):
    parser = subparsers.add_parser("classify", help="order, genus, deficiency and escape classification")
    kinds = parser.add_subparsers(dest="kind", metavar="KIND", required=True)

    order = kinds.add_parser("order", help="order estimate from log log M(r)")
    add_spec_arguments(order)
    order.add_argument("--r-min", type=float, default=1e2)
    order.add_argument("--r-max", type=float, default=1e8)
    order.add_argument("--grid-ratio", type=float, default=1.2)
    add_output_arguments(order, csv=True)
    order.set_defaults(handler=run_order)

    genus = kinds.add_parser("genus", help="genus and Laguerre-Polya membership")
    add_spec_arguments(genus, tolerance=None)
    add_output_arguments(genus)
    genus.set_defaults(handler=run_genus)

    defect = kinds.add_parser("defect", help="N(r)/T(r) and the deficiency of 0")
    add_spec_arguments(defect)
    defect.add_argument("--r-min", type=float, default=0.1)
    defect.add_argument("--r-max", type=float, default=100.0)
    defect.add_argument("--points-per-decade", type=int, default=3)
    defect.add_argument("--quadrature-points", type=int, default=256)
    add_output_arguments(defect, csv=True)
    defect.set_defaults(handler=run_defect)

    rays = kinds.add_parser("rays", help="decay of log|f| along candidate rays")
    add_spec_arguments(rays)
    rays.add_argument("--r-min", type=float, default=10.0)
    rays.add_argument("--r-max", type=float, default=100.0)
    rays.add_argument("--points", type=int, default=24)
    add_output_arguments(rays, csv=True)
    rays.set_defaults(handler=run_rays)

    prop = kinds.add_parser("property", help="finite-horizon verdict on m^n(r) -> infinity")
    add_spec_arguments(prop, tolerance=1e-6)
    prop.add_argument("--r-min", type=float, default=PROPERTY_RANGE[0])
    prop.add_argument("--r-max", type=float, default=PROPERTY_RANGE[1])
    prop.add_argument("--v-power", type=int, metavar="P_MAX",
                      help="also report the smallest p <= P_MAX with tilde-m^p >= M on the range")
    add_output_arguments(prop)
    prop.set_defaults(handler=run_property)

    equivalences = kinds.add_parser("equivalences", help="finite proxies of the equivalent escape conditions")
    add_spec_arguments(equivalences, tolerance=1e-7)
    equivalences.add_argument("--T", type=float, default=10.0)
    equivalences.add_argument("--T-max", type=float, default=1e4)
    equivalences.add_argument("--max-iter", type=int, default=20)
    add_output_arguments(equivalences)
    equivalences.set_defaults(handler=run_equivalences)

    counting = kinds.add_parser("counting", help="n(r), N(r) and T(r)")
    add_spec_arguments(counting)
    counting.add_argument("--r", type=float)
    add_output_arguments(counting)
    counting.set_defaults(handler=run_counting)


def run_order(args) -> int:
    spec = resolve_spec(args)
    growth = estimate_order(spec, args.r_min, args.r_max, args.grid_ratio, tail_tolerance=args.tolerance)
    report = {"function": spec.label(), "order_estimate": growth.order_estimate,
              "windows": len(growth.window_slopes)}
    rows = [{"log_r": float(lr), "loglog_max": float(v)} for lr, v in zip(growth.log_radii, growth.loglog_max)]
    emit_report(report, args, rows=rows)
    return 0


def run_genus(args) -> int:
    spec = resolve_spec(args)
    report = {"function": spec.label()}
    report.update(compute_genus(spec).to_dict())
    report["laguerre_polya"] = is_laguerre_polya(spec)
    emit_report(report, args)
    return 0


def run_defect(args) -> int:
    spec = resolve_spec(args)
    deficiency = defect_zero(spec, r_min=args.r_min, r_max=args.r_max, points_per_decade=args.points_per_decade,
                             quadrature_points=args.quadrature_points, tail_tolerance=args.tolerance)
    report = {"function": spec.label(), "defect_estimate": deficiency.defect_estimate,
              "final_ratio": float(deficiency.ratio_N_over_T[-1])}
    rows = [{"log_r": float(lr), "N": float(n), "T": float(t), "ratio": float(q)}
            for lr, n, t, q in zip(deficiency.log_radii, deficiency.N_values, deficiency.T_values,
                                   deficiency.ratio_N_over_T)]
    emit_report(report, args, rows=rows)
    return 0


def run_rays(args) -> int:
    spec = resolve_spec(args)
    scans = decay_ray_scan(spec, args.r_min, args.r_max, args.points, tail_tolerance=args.tolerance)
    report = {"function": spec.label(), "candidates": decay_candidates(spec)}
    rows = []
    for index, scan in enumerate(scans):
        report[f"ray_{index}"] = scan.to_dict()
        rows.extend(scan.to_rows())
    emit_report(report, args, rows=rows)
    return 0


def run_property(args) -> int:
    spec = resolve_spec(args)
    verdict = classify_property(spec, args.r_min, args.r_max, tail_tolerance=args.tolerance)
    report = {"function": spec.label(), "verdict": str(verdict), "kind": verdict.kind, "bound": verdict.bound,
              "details": verdict.details}
    if verdict.witness is not None:
        report["seed"] = verdict.witness.seed
    if args.v_power is not None:
        report["v_power"] = v_condition_power(spec, args.r_min, args.r_max, args.v_power,
                                              tail_tolerance=args.tolerance)
    emit_report(report, args)
    return 0


def run_equivalences(args) -> int:
    spec = resolve_spec(args)
    equivalence = check_equivalences(spec, args.T, args.T_max, max_iter=args.max_iter,
                                     tail_tolerance=args.tolerance)
    report = {"function": spec.label()}
    report.update(equivalence.to_dict())
    report["seed"] = equivalence.seed.seed if equivalence.seed else None
    emit_report(report, args)
    return 0


def run_counting(args) -> int:
    require(args, "r")
    spec = resolve_spec(args)
    report = {
        "function": spec.label(),
        "r": args.r,
        "n": counting_n(spec, args.r),
        "N": counting_N(spec, args.r),
        "T": characteristic_T(spec, args.r, tail_tolerance=args.tolerance),
    }
    emit_report(report, args)
    return 0
