from core.spec_parser import format_spec, write_spec_file
from .utils.spec_source import add_spec_arguments, resolve_spec


def register_family_command(subparsers):
    parser = subparsers.add_parser("family", help="print a built-in family as a spec file")
    add_spec_arguments(parser, tolerance=None)
    parser.add_argument("--out-spec", help="write the spec file here as well")
    parser.set_defaults(handler=run_family)


def run_family(args) -> int:
    spec = resolve_spec(args)
    print(format_spec(spec), end="")
    if args.out_spec:
        write_spec_file(spec, args.out_spec)
    return 0
