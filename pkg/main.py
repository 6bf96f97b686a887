import sys
import logging
import argparse
from typing import List, Optional

from dotenv import load_dotenv, find_dotenv

from core.config import LOG_LEVELS, config_key_lines, load_runtime_config_cached, read_config_file
from core.errors import ConfigError, MinModError
from commands import (
    register_family_command,
    register_eval_command,
    register_modulus_command,
    register_orbit_command,
    register_classify_command,
    register_lemmas_command,
    register_verify51_command,
    register_escape_command
)

logger = logging.getLogger("minmodlab")


class UsageError(Exception):
    """argparse usage error, raised instead of exiting."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="minmodlab", description="Minimum modulus and escaping sets of real entire functions.")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, help="overrides MINMODLAB_LOG_LEVEL")
    parser.add_argument("--config", help="key=value file of flag defaults (flag names without dashes)")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True,
                                       parser_class=ArgumentParser)

    # --- SUBCOMMANDS ---
    register_family_command(subparsers)
    register_eval_command(subparsers)
    register_modulus_command(subparsers)
    register_orbit_command(subparsers)
    register_classify_command(subparsers)
    register_lemmas_command(subparsers)
    register_verify51_command(subparsers)
    register_escape_command(subparsers)
    return parser


def _subparsers_action(parser: argparse.ArgumentParser) -> Optional[argparse._SubParsersAction]:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action
    return None


def _selected_parser(parser: argparse.ArgumentParser, argv: List[str]) -> argparse.ArgumentParser:
    """Deepest subparser named on the command line."""
    current = parser
    for token in argv:
        action = _subparsers_action(current)
        if action is None:
            break
        if token in action.choices:
            current = action.choices[token]
    return current


def _convert(action: argparse.Action, raw: str, where: str, key: str):
    try:
        if action.nargs == 0:
            lowered = raw.lower()
            if lowered not in ("true", "false"):
                raise ValueError(raw)
            return lowered == "true"
        convert = action.type or str
        if action.nargs in ("+", "*") or isinstance(action.nargs, int):
            values = [convert(part) for part in raw.split()]
            if isinstance(action.nargs, int) and len(values) != action.nargs:
                raise ValueError(raw)
            return values
        value = convert(raw)
        if action.choices is not None and value not in action.choices:
            raise ValueError(raw)
        return value
    except (ValueError, TypeError, argparse.ArgumentTypeError):
        raise ConfigError(f"{where}: cannot parse {key}={raw!r}") from None


def apply_config_file(parser: argparse.ArgumentParser, argv: List[str], path: str):
    """
    Installs the file's values as defaults of the selected subcommand, so flags
    given on the command line still win.

    Args:
        parser: top-level parser.
        argv: command-line tokens.
        path: key=value file.
    """
    target = _selected_parser(parser, argv)
    options = {}
    for action in target._actions:
        for option in action.option_strings:
            options[option.lstrip("-").lower()] = action

    values = read_config_file(path)
    lines = config_key_lines(path)
    defaults = {}
    for key, raw in values.items():
        where = f"{path}:{lines.get(key, '?')}"
        action = options.get(key)
        if action is None or key == "help":
            raise ConfigError(f"{where}: unknown key {key!r} for '{target.prog}'")
        defaults[action.dest] = _convert(action, raw, where, key)
    target.set_defaults(**defaults)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv(find_dotenv(usecwd=True))
    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        # 1. Parse flags (with the optional config file as defaults)
        parser = build_parser()
        pre = ArgumentParser(add_help=False, allow_abbrev=False)
        pre.add_argument("--config")
        pre.add_argument("--log-level")
        early, _ = pre.parse_known_args(argv)
        if early.config:
            apply_config_file(parser, argv, early.config)
        args = parser.parse_args(argv)

        # 2. Logging
        level = args.log_level or load_runtime_config_cached().log_level
        logging.basicConfig(format="%(levelname)s: %(message)s", level=level, force=True)

        # 3. Run
        logger.debug("running %s with %s", args.command, vars(args))
        return args.handler(args)

    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MinModError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        # numerical failures from numpy or scipy that the library did not wrap
        logger.debug("unexpected numerical failure", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
