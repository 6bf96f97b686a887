import cmath
import math

from core.analytic.closed_forms import closed_form_log
from core.analytic.hadamard import eval_log_points, partial_log, tail_bound
from .utils.spec_source import add_output_arguments, add_spec_arguments, emit_report, parse_complex, require, resolve_spec


def register_eval_command(subparsers):
    parser = subparsers.add_parser("eval", help="evaluate log f(z)")
    add_spec_arguments(parser)
    parser.add_argument("--z", type=parse_complex, help="point, e.g. 0.25 or 3+4i")
    parser.add_argument("--cutoff", type=int, help="also report the raw product over this many zeros")
    add_output_arguments(parser)
    parser.set_defaults(handler=run_eval)


def run_eval(args) -> int:
    require(args, "z")
    spec = resolve_spec(args)
    z = args.z
    radius, theta = cmath.polar(z)
    log_r = math.log(radius) if radius > 0 else -math.inf
    values = eval_log_points(spec, [log_r], [theta], args.tolerance)
    value = values.at(0)

    report = {
        "function": spec.label(),
        "z": f"{z.real!r}{z.imag:+}i",
        "log_modulus": value.log_modulus,
        "argument": value.argument,
        "error_bound": float(values.error[0]),
    }
    if spec.closed_form:
        report["closed_form_log_modulus"] = closed_form_log(spec.closed_form, z).log_modulus
    if args.cutoff is not None:
        report["partial_log_modulus"] = partial_log(spec, z, args.cutoff).log_modulus
        report["tail_bound"] = tail_bound(spec, radius, args.cutoff) if radius > 0 else 0.0
    emit_report(report, args)
    return 0
