"""
Report export utilities: `key: value` text for the terminal, CSV for tabular
rows and JSON for whole reports.
"""
import json
import math
from typing import Dict, Iterable, List, Optional

import numpy as np
import pandas as pd


def _format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.12g}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def format_report_lines(report: Dict, prefix: str = "") -> str:
    """
    Formats a report dictionary as `key: value` lines; nested dictionaries are
    flattened with dotted keys.

    Args:
        report: dictionary, usually from a model's to_dict().
        prefix: key prefix for nested entries.

    Returns:
        Text with one line per leaf value.
    """
    lines = []
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            nested = format_report_lines(value, prefix=f"{name}.")
            if nested:
                lines.append(nested.rstrip("\n"))
            continue
        lines.append(f"{name}: {_format_value(value)}")
    return "\n".join(lines) + ("\n" if lines else "")


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def format_report_json(report: Dict) -> str:
    # infinities become the JSON extensions Infinity / -Infinity
    return json.dumps(report, indent=2, default=_json_default) + "\n"


def format_rows_to_csv(rows: List[Dict], columns: Optional[Iterable[str]] = None) -> str:
    """
    Tabular rows as CSV text, floats written with full precision.

    Args:
        rows: one dictionary per row.
        columns: column order; default is the key order of the first row.

    Returns:
        CSV formatted string (header only when rows is empty and columns are given).
    """
    frame = pd.DataFrame(rows, columns=list(columns) if columns is not None else None)
    return frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
