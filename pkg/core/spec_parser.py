"""
Plain-text key-value format for EntireFunctionSpec.

    # cos sqrt z
    name = cos_sqrt
    origin_power = 0
    poly = 0.6931471805599453 0 -1/2
    factor_index = 0
    generator = power_law
    scale = 9.869604401089358
    exponent = 2
    offset = -1/2
    zero = -3 2

Numbers accept integers, decimals and p/q fractions; floats are written with
repr so a written file reads back to the same bits. `zero = location multiplicity`
lines give an explicit list. `square_substitute = true` builds f(z^2) from the
fields above it (which then describe f).
"""
import math
import logging
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Tuple

from core.errors import InvalidSpec
from core.analytic.hadamard import square_substitute
from core.models.functions import (
    EntireFunctionSpec,
    ExplicitZeros,
    PowerLawZeros,
    RealPolynomial,
    RecursiveZeros,
    ZeroEntry,
    ZeroSequence,
)

logger = logging.getLogger(__name__)

SPEC_KEYS = {
    "name", "source_name", "origin_power", "poly", "factor_index", "closed_form", "generator",
    "scale", "exponent", "log_exponent", "offset", "start", "multiplicity", "symmetric",
    "rho", "variant", "max_levels", "square_root_taken", "square_substitute", "zero",
}
GENERATOR_KEYS = {
    "explicit": set(),
    "power_law": {"scale", "exponent", "log_exponent", "offset", "start", "multiplicity", "symmetric"},
    "recursive": {"rho", "variant", "max_levels", "square_root_taken"},
}


def _number(text: str, line_no: int) -> float:
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidSpec(f"line {line_no}: {text!r} is not a number") from None


def _integer(text: str, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidSpec(f"line {line_no}: {text!r} is not an integer") from None


def _boolean(text: str, line_no: int) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise InvalidSpec(f"line {line_no}: {text!r} is not a boolean")


def parse_spec_content(content_string: str) -> EntireFunctionSpec:
    """
    Parses spec file content into an EntireFunctionSpec.

    Args:
        content_string: raw text of the spec file.

    Returns:
        EntireFunctionSpec (square-substituted when the file asks for it).
    """
    fields: Dict[str, Tuple[str, int]] = {}
    zeros: List[ZeroEntry] = []

    # 1. Collect the fields
    for line_no, raw in enumerate(content_string.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidSpec(f"line {line_no}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in SPEC_KEYS:
            raise InvalidSpec(f"line {line_no}: unknown key {key!r}")
        if key == "zero":
            parts = value.split()
            if len(parts) not in (1, 2):
                raise InvalidSpec(f"line {line_no}: expected 'zero = location [multiplicity]'")
            location = _number(parts[0], line_no)
            multiplicity = _integer(parts[1], line_no) if len(parts) == 2 else 1
            try:
                zeros.append(ZeroEntry.from_location(location, multiplicity))
            except InvalidSpec as exc:
                raise InvalidSpec(f"line {line_no}: {exc}") from None
            continue
        if key in fields:
            raise InvalidSpec(f"line {line_no}: duplicate key {key!r} (first on line {fields[key][1]})")
        fields[key] = (value, line_no)

    def get(key, convert, default):
        if key not in fields:
            return default
        value, line_no = fields[key]
        return convert(value, line_no)

    # 2. Generator
    kind = fields.get("generator", ("explicit", 0))[0].lower()
    if kind not in GENERATOR_KEYS:
        raise InvalidSpec(f"line {fields['generator'][1]}: unknown generator {kind!r}")
    for key in set().union(*GENERATOR_KEYS.values()) - GENERATOR_KEYS[kind]:
        if key in fields:
            raise InvalidSpec(f"line {fields[key][1]}: key {key!r} does not apply to generator {kind!r}")
    if zeros and kind != "explicit":
        raise InvalidSpec(f"zero lines need generator = explicit, got {kind!r}")

    try:
        if kind == "explicit":
            generator = ExplicitZeros(tuple(zeros))
        elif kind == "power_law":
            generator = PowerLawZeros(
                scale=get("scale", _number, 1.0),
                exponent=get("exponent", _number, 1.0),
                log_exponent=get("log_exponent", _number, 0.0),
                offset=get("offset", _number, 0.0),
                start=get("start", _integer, 1),
                multiplicity=get("multiplicity", _integer, 1),
                symmetric=get("symmetric", _boolean, False),
            )
        else:
            variant = fields.get("variant", ("power", 0))[0]
            generator = RecursiveZeros(
                rho=get("rho", _number, 0.5) if variant == "power" else None,
                variant=variant,
                max_levels=get("max_levels", _integer, 400),
                square_root_taken=get("square_root_taken", _boolean, False),
            )

        # 3. The spec itself
        poly_text, poly_line = fields.get("poly", ("", 0))
        poly = RealPolynomial(tuple(_number(c, poly_line) for c in poly_text.split()))
        closed_form = fields.get("closed_form", (None, 0))[0]
        spec = EntireFunctionSpec(
            origin_power=get("origin_power", _integer, 0),
            exponent_poly=poly,
            zeros=ZeroSequence(generator),
            factor_index=get("factor_index", _integer, generator.minimal_factor_index()),
            closed_form=None if closed_form in (None, "", "none") else closed_form,
            name=fields.get("name", ("", 0))[0],
        )
    except InvalidSpec as exc:
        raise InvalidSpec(f"spec file: {exc}") from None

    if get("square_substitute", _boolean, False):
        source = replace(spec, name=fields.get("source_name", ("", 0))[0])
        spec = square_substitute(source)
        if "name" in fields:
            spec = replace(spec, name=fields["name"][0])

    logger.info("parsed spec %s", spec.label())
    return spec


def read_spec_file(path: str) -> EntireFunctionSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_spec_content(handle.read())


# --- Writing ---


def _format_number(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if value.is_integer() and abs(value) < 2 ** 53:
        return str(int(value))
    return repr(value)


def format_spec(spec: EntireFunctionSpec) -> str:
    """
    Key-value text of a spec; parse_spec_content reads it back to an equal spec.
    A square-substituted spec is written as its source plus `square_substitute = true`.
    """
    body = spec.square_of if spec.square_of is not None else spec
    lines = []
    if spec.name:
        lines.append(f"name = {spec.name}")
    if spec.square_of is not None and body.name:
        lines.append(f"source_name = {body.name}")
    lines.append(f"origin_power = {body.origin_power}")
    if not body.exponent_poly.is_zero:
        lines.append("poly = " + " ".join(_format_number(c) for c in body.exponent_poly.coefficients))
    lines.append(f"factor_index = {body.factor_index}")
    if body.closed_form:
        lines.append(f"closed_form = {body.closed_form}")

    fields = body.generator.to_fields()
    lines.append(f"generator = {fields.pop('generator')}")
    for key, value in fields.items():
        if value is None:
            continue
        lines.append(f"{key} = {value if isinstance(value, str) else _format_number(value)}")
    if isinstance(body.generator, ExplicitZeros):
        for entry in body.generator.entries:
            location = entry.location
            if not math.isfinite(location):
                raise InvalidSpec(f"zero e^{entry.log_abs:.6g} is too large for the text format")
            lines.append(f"zero = {_format_number(location)} {entry.multiplicity}")

    if spec.square_of is not None:
        lines.append("square_substitute = true")
    return "\n".join(lines) + "\n"


def write_spec_file(spec: EntireFunctionSpec, path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_spec(spec))
