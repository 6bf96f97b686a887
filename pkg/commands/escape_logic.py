from core.errors import ConfigError
from core.dynamics.escape_grid import RENDER_TOLERANCE, build_schedule, render_escape, schedule_kind
from core.exporters.graymap import export_grid
from core.models.escape import SCHEDULE_NAMES
from .utils.spec_source import add_output_arguments, add_spec_arguments, emit_report, require, resolve_spec


def register_escape_command(subparsers):
    parser = subparsers.add_parser("escape", help="render an escape-time grid against a threshold schedule")
    add_spec_arguments(parser, tolerance=RENDER_TOLERANCE)
    parser.add_argument("--rect", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    parser.add_argument("--width", type=int, default=64)
    parser.add_argument("--height", type=int, default=64)
    parser.add_argument("--schedule", choices=sorted(SCHEDULE_NAMES), help="threshold schedule kind")
    parser.add_argument("--max-iter", type=int, default=10, help="schedule steps compared per pixel")
    parser.add_argument("--R", type=float, help="base radius of max-mod-power, tilde-min-iter and quite-fast")
    parser.add_argument("--seed-radius", type=float, help="r of min-mod-iter-cube")
    parser.add_argument("--N", type=int, default=0, help="index shift of min-mod-iter-cube")
    parser.add_argument("--exponent", type=float, default=1.0 / 3.0, help="power of min-mod-iter-cube")
    parser.add_argument("--eps", type=float, help="exponent of quite-fast")
    parser.add_argument("--values", type=float, nargs="+", help="radii a_0, a_1, ... of custom")
    parser.add_argument("--offset", type=int, default=0, help="iterate shift L")
    parser.add_argument("--grid-ratio", type=float, default=1.02, help="grid ratio of tilde-min-iter")
    parser.add_argument("--out-image", help="P5 graymap output")
    add_output_arguments(parser, csv=True)
    parser.set_defaults(handler=run_escape)


def run_escape(args) -> int:
    require(args, "rect", "schedule")
    spec = resolve_spec(args)
    kind = schedule_kind(args.schedule)
    if args.max_iter < 1:
        raise ConfigError(f"--max-iter must be >= 1, got {args.max_iter}")

    schedule = build_schedule(spec, kind, args.max_iter, R=args.R, seed_radius=args.seed_radius, N=args.N,
                              exponent=args.exponent, eps=args.eps, values=args.values, offset=args.offset,
                              grid_ratio=args.grid_ratio)
    grid = render_escape(spec, tuple(args.rect), (args.width, args.height), schedule, args.max_iter,
                         tail_tolerance=args.tolerance)

    report = {"function": spec.label(), "schedule": kind}
    report.update(grid.summary())
    report["thresholds"] = [float(v) for v in schedule.values[:args.max_iter]]
    out_csv, args.out_csv = args.out_csv, None
    emit_report(report, args)
    export_grid(grid, args.out_image, out_csv)
    return 0
