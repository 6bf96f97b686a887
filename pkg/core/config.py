import os
import re
import logging
from dataclasses import dataclass
from typing import Dict

from dotenv import load_dotenv, find_dotenv, dotenv_values

from core.errors import ConfigError

logger = logging.getLogger(__name__)

# Cached once per process, like the machine configuration used to be
RUNTIME_CONFIG = None

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class RuntimeConfig:
    """
    Process-wide knobs read from the environment (and .env).
    """
    threads: int = 1
    log_level: str = "WARNING"
    max_zeros: int = 1 << 23
    show_progress: bool = False

    def to_dict(self):
        return self.__dict__


def load_runtime_config_cached() -> RuntimeConfig:
    global RUNTIME_CONFIG
    if RUNTIME_CONFIG is None:
        RUNTIME_CONFIG = get_runtime_config_from_env()
    return RUNTIME_CONFIG


def reset_runtime_config():
    """Drops the cached config so the next call re-reads the environment."""
    global RUNTIME_CONFIG
    RUNTIME_CONFIG = None


def _read_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer")
    if value < minimum:
        raise ConfigError(f"{name}={value} must be >= {minimum}")
    return value


def get_runtime_config_from_env() -> RuntimeConfig:
    """
    Builds the runtime config from MINMODLAB_* variables.

    Returns:
        RuntimeConfig: validated settings.
    """
    load_dotenv(find_dotenv(usecwd=True))

    level = os.getenv("MINMODLAB_LOG_LEVEL", "WARNING").upper()
    if level not in LOG_LEVELS:
        raise ConfigError(f"MINMODLAB_LOG_LEVEL={level!r} is not one of {', '.join(LOG_LEVELS)}")

    progress = os.getenv("MINMODLAB_PROGRESS", "False")
    if progress not in ("True", "False"):
        raise ConfigError(f"MINMODLAB_PROGRESS={progress!r} must be True or False")

    return RuntimeConfig(
        threads=_read_int("MINMODLAB_THREADS", 1, 1),
        log_level=level,
        max_zeros=_read_int("MINMODLAB_MAX_ZEROS", 1 << 23, 1024),
        show_progress=progress == "True",
    )


# key at the start of a .env-style line, with optional `export`
_ENTRY = re.compile(r"^\s*(?:export\s+)?([A-Za-z_][A-Za-z0-9_.-]*)\s*(?:=|$)")


def _flag_key(key: str) -> str:
    return key.strip().lower().replace("_", "-")


def config_key_lines(path: str) -> Dict[str, int]:
    """
    Line number (1-based) of every key in a key=value run config; the last
    occurrence wins, as it does for the values.

    Raises:
        ConfigError: on a line that is neither blank, a comment nor an entry.
    """
    lines = {}
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            match = _ENTRY.match(line)
            if match is None:
                raise ConfigError(f"{path}:{number}: cannot parse {stripped!r}")
            lines[_flag_key(match.group(1))] = number
    return lines


def read_config_file(path: str) -> dict:
    """
    Reads a key=value run config (same syntax as a .env file).

    Args:
        path: file location.

    Returns:
        dict: key -> raw string value, keys normalized to flag spelling.
    """
    if not os.path.isfile(path):
        raise ConfigError(f"config file {path!r} does not exist")
    lines = config_key_lines(path)
    values = dotenv_values(path)
    parsed = {}
    for key, value in values.items():
        flag = _flag_key(key)
        if value is None:
            raise ConfigError(f"{path}:{lines.get(flag, '?')}: entry {key!r} has no value")
        parsed[flag] = value.strip()
    return parsed
