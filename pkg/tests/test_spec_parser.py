import math

import pytest

from core.errors import InvalidSpec, MixedSignZeros
from core.families import family_by_name
from core.spec_parser import format_spec, parse_spec_content, read_spec_file, write_spec_file

COS_SQRT_FILE = """
# cos sqrt z written out by hand
name = cos_sqrt
generator = power_law
scale = 9.869604401089358   # pi^2
exponent = 2
offset = -1/2
closed_form = cos_sqrt
"""


def test_hand_written_file_matches_the_family():
    assert parse_spec_content(COS_SQRT_FILE) == family_by_name("cos-sqrt")


@pytest.mark.parametrize("name, params", [
    ("cos-sqrt", {}),
    ("z-cos-sqrt", {}),
    ("hardy", {"sigma": 4.0 / 3.0}),
    ("lindelof", {"alpha": 1.5}),
    ("constructed", {"rho": 0.5}),
    ("constructed-order1", {}),
    ("genus-power", {"s": 0.4}),
])
def test_written_families_read_back_equal(name, params):
    spec = family_by_name(name, **params)
    assert parse_spec_content(format_spec(spec)) == spec


def test_square_substituted_spec_keeps_its_source():
    spec = family_by_name("genus-power", s=0.4, symmetric=True)
    text = format_spec(spec)
    assert "square_substitute = true" in text
    parsed = parse_spec_content(text)
    assert parsed == spec
    assert parsed.square_of == spec.square_of


def test_explicit_zeros(tmp_path):
    text = "origin_power = 1\npoly = 0 1/4 -1/2\nzero = -3 2\nzero = 1.5\n"
    spec = parse_spec_content(text)
    assert spec.origin_power == 1
    assert spec.exponent_poly.coefficients == (0.0, 0.25, -0.5)
    entries = spec.generator.entries
    assert [e.location for e in entries] == pytest.approx([1.5, -3.0])
    assert [e.multiplicity for e in entries] == [1, 2]

    path = tmp_path / "explicit.spec"
    write_spec_file(spec, str(path))
    again = read_spec_file(str(path))
    assert [e.location for e in again.generator.entries] == [1.5, -3.0]
    assert again.exponent_poly == spec.exponent_poly


def test_explicit_zeros_read_back_bit_exact(tmp_path):
    text = "zero = 3\nzero = 0.1 2\nzero = -7\n"
    spec = parse_spec_content(text)
    assert [e.location for e in spec.generator.entries] == [0.1, 3.0, -7.0]

    written = format_spec(spec)
    assert "zero = 0.1 2\n" in written
    assert "zero = 3 1\n" in written
    assert "zero = -7 1\n" in written
    again = parse_spec_content(written)
    assert again == spec
    assert format_spec(again) == written

    path = tmp_path / "decimal.spec"
    write_spec_file(again, str(path))
    assert [e.location for e in read_spec_file(str(path)).generator.entries] == [0.1, 3.0, -7.0]


@pytest.mark.parametrize("text, where", [
    ("name = a\nname = b\n", "line 2"),
    ("colour = red\n", "line 1"),
    ("generator = power_law\nrho = 0.5\n", "line 2"),
    ("zero = 0\n", "line 1"),
    ("generator = power_law\nscale = two\n", "line 2"),
    ("just words\n", "line 1"),
    ("generator = spiral\n", "line 1"),
    ("zero = 1 2 3\n", "line 1"),
])
def test_errors_name_the_line(text, where):
    with pytest.raises(InvalidSpec, match=where):
        parse_spec_content(text)


def test_zero_lines_need_the_explicit_generator():
    with pytest.raises(InvalidSpec):
        parse_spec_content("generator = power_law\nzero = 2\n")


def test_divergent_factor_index_is_rejected():
    with pytest.raises(InvalidSpec):
        parse_spec_content("generator = power_law\nexponent = 0.5\nfactor_index = 0\n")


def test_square_substitution_needs_one_signed_zeros():
    with pytest.raises(MixedSignZeros):
        parse_spec_content("zero = 2\nzero = -3\nsquare_substitute = true\n")


def test_missing_file():
    with pytest.raises(OSError):
        read_spec_file("/nonexistent/f.spec")


def test_written_floats_are_exact():
    spec = family_by_name("hardy", sigma=4.0 / 3.0)
    text = format_spec(spec)
    assert f"exponent = {4.0 / 3.0!r}" in text
    assert math.isclose(parse_spec_content(text).generator.exponent, 4.0 / 3.0, rel_tol=0.0)
