import json
import math

import pytest

import main
from commands import eval_logic
from core.spec_parser import read_spec_file
from core.families import family_by_name


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(text):
    """`key: value` lines as a dict of raw strings."""
    report = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        report[key] = value
    return report


# --- Subcommands ---


def test_family_prints_a_spec_file(capsys, tmp_path):
    path = tmp_path / "cos.spec"
    code, out, _ = run(capsys, "family", "--family", "cos-sqrt", "--out-spec", str(path))
    assert code == 0
    assert "generator = power_law" in out
    assert read_spec_file(str(path)) == family_by_name("cos-sqrt")


def test_eval_with_closed_form(capsys):
    code, out, _ = run(capsys, "eval", "--family", "cos-sqrt", "--z", "4", "--cutoff", "50")
    report = report_of(out)
    assert code == 0
    assert float(report["log_modulus"]) == pytest.approx(math.log(abs(math.cos(2.0))), abs=1e-7)
    assert float(report["closed_form_log_modulus"]) == pytest.approx(float(report["log_modulus"]), abs=1e-7)
    assert abs(float(report["partial_log_modulus"]) - float(report["log_modulus"])) <= float(report["tail_bound"])


def test_eval_accepts_negative_complex_points(capsys, tmp_path):
    out_json = tmp_path / "eval.json"
    code, _, _ = run(capsys, "eval", "--family", "z-squared", "--z=-1+2i", "--out-json", str(out_json))
    assert code == 0
    data = json.loads(out_json.read_text())
    assert data["log_modulus"] == pytest.approx(math.log(5.0))


def test_modulus_of_z_squared(capsys, tmp_path):
    out_csv = tmp_path / "samples.csv"
    code, out, _ = run(capsys, "modulus", "--family", "z-squared", "--r", "3", "--tilde", "--out-csv", str(out_csv))
    report = report_of(out)
    assert code == 0
    assert float(report["min_log"]) == pytest.approx(2 * math.log(3.0))
    assert float(report["max_log"]) == pytest.approx(2 * math.log(3.0))
    assert float(report["tilde_min_log"]) == pytest.approx(2 * math.log(3.0), rel=1e-9)
    assert out_csv.read_text().startswith("r,theta,log_modulus")


def test_modulus_needs_one_radius(capsys):
    code, _, err = run(capsys, "modulus", "--family", "z-squared")
    assert code == 2
    assert "--r" in err


def test_seeded_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "z-squared", "--seed", "2", "--escape-log", "100")
    report = report_of(out)
    assert code == 0
    assert report["status"] == "Escaped(step=8)"
    assert report["steps"] == "8"
    assert report["strictly_increasing"] == "true"


def test_auto_seeded_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "z-cos-sqrt", "--auto-seed")
    report = report_of(out)
    assert code == 0
    assert report["verdict"].startswith("Holds(seed=")
    assert report["kind"] == "HOLDS"
    assert report["orbit_status"].startswith("Escaped")


def test_classify_genus(capsys):
    code, out, _ = run(capsys, "classify", "genus", "--family", "genus-power", "--s", "0.4")
    report = report_of(out)
    assert code == 0
    assert report["genus"] == "2"
    assert report["laguerre_polya"] == "false"


def test_classify_counting(capsys):
    code, out, _ = run(capsys, "classify", "counting", "--family", "cos-sqrt", "--r", "100")
    report = report_of(out)
    assert code == 0
    assert report["n"] == "3"
    assert float(report["N"]) == pytest.approx(5.6899, abs=1e-3)
    assert float(report["T"]) >= float(report["N"])


def test_classify_order_of_a_polynomial_fails(capsys):
    code, _, err = run(capsys, "classify", "order", "--family", "z-squared")
    assert code == 1
    assert err.startswith("error: ")


def test_lemmas(capsys):
    code, out, _ = run(capsys, "lemmas", "prodl", "--tight")
    report = report_of(out)
    assert code == 0
    assert report["terms"] == "20"
    assert report["verdict"] == "PASS"

    code, out, _ = run(capsys, "lemmas", "ray", "--m", "2")
    report = report_of(out)
    assert code == 0
    assert report["verdict"] == "PASS"
    assert float(report["finite_difference_error"]) < 1e-5

    code, out, _ = run(capsys, "lemmas", "angles", "--m", "3")
    assert report_of(out)["sign_conditions"] == "[true, true]"


def test_prodl_rejects_a_short_first_radius(capsys):
    code, _, _ = run(capsys, "lemmas", "prodl", "--log-r", "100")
    assert code == 1


def test_verify51(capsys, tmp_path):
    out_json, out_csv = tmp_path / "v.json", tmp_path / "v.csv"
    code, out, _ = run(capsys, "verify51", "--k-max", "4", "--k-to", "2",
                       "--out-json", str(out_json), "--out-csv", str(out_csv))
    report = report_of(out)
    assert code == 0
    assert report["level_1.verdict"] == "FAIL"
    assert report["level_2.verdict"] == "PASS"
    assert report["all_passed"] == "false"
    data = json.loads(out_json.read_text())
    assert len(data["construction"]["levels"]) == 4
    assert len(out_csv.read_text().splitlines()) == 5


def test_escape_grid(capsys, tmp_path):
    image, table = tmp_path / "e.pgm", tmp_path / "e.csv"
    code, out, _ = run(capsys, "escape", "--family", "z-squared", "--rect", "-4", "4", "-4", "4",
                       "--width", "8", "--height", "8", "--schedule", "max-mod-power", "--R", "2",
                       "--max-iter", "5", "--out-image", str(image), "--out-csv", str(table))
    report = report_of(out)
    assert code == 0
    # pixel centres with |z| >= 2: all but the 12 nearest the origin
    assert report["survivors"] == "52"
    assert image.read_bytes().startswith(b"P5\n8 8\n255\n")
    assert len(table.read_text().splitlines()) == 65


# --- Errors and configuration ---


@pytest.mark.parametrize("argv", [
    ["eval", "--z", "1"],
    ["eval", "--family", "cos-sqrt", "--spec-file", "x.spec", "--z", "1"],
    ["bogus"],
    ["eval", "--family", "cos-sqrt"],
    ["escape", "--family", "z-squared", "--rect", "0", "1"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_library_errors_exit_one(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "--family", "hardy", "--sigma", "0.5", "--z", "1")
    assert code == 1
    assert "sigma" in err
    code, _, _ = run(capsys, "eval", "--spec-file", str(tmp_path / "missing.spec"), "--z", "1")
    assert code == 1


def test_config_file_supplies_defaults(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("family = z-squared\nrect = -4 4 -4 4\nschedule = max-mod-power\n"
                      "R = 2\nmax_iter = 5\nwidth = 8\nheight = 8\n")
    code, out, _ = run(capsys, "--config", str(config), "escape", "--width", "4")
    report = report_of(out)
    assert code == 0
    assert report["width"] == "4"
    assert report["height"] == "8"
    assert report["max_iter"] == "5"


def test_config_file_rejects_unknown_keys(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("colour = red\n")
    code, _, err = run(capsys, "--config", str(config), "eval", "--family", "cos-sqrt", "--z", "1")
    assert code == 2
    assert "colour" in err


def test_bad_environment_exits_two(capsys, monkeypatch):
    monkeypatch.setenv("MINMODLAB_THREADS", "many")
    code, _, err = run(capsys, "lemmas", "angles", "--m", "2")
    assert code == 2
    assert "MINMODLAB_THREADS" in err


@pytest.mark.parametrize("failure", [
    ValueError("f(a) and f(b) must have different signs"),
    ZeroDivisionError("float division by zero"),
])
def test_unwrapped_numerical_errors_exit_one(capsys, monkeypatch, failure):
    def failing_eval(args):
        raise failure

    monkeypatch.setattr(eval_logic, "run_eval", failing_eval)
    code, _, err = run(capsys, "eval", "--family", "cos-sqrt", "--z", "1")
    assert code == 1
    assert err.startswith("error: ")
    assert type(failure).__name__ in err
    assert "Traceback" not in err


def test_config_file_errors_name_the_line(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("# eval run\nfamily = cos-sqrt\n\ncolour = red\n")
    code, _, err = run(capsys, "--config", str(config), "eval", "--z", "1")
    assert code == 2
    assert "run.cfg:4" in err

    config.write_text("family = z-squared\nwidth = many\n")
    code, _, err = run(capsys, "--config", str(config), "escape")
    assert code == 2
    assert "run.cfg:2" in err
    assert "width" in err

    config.write_text("family = z-squared\n= 3\n")
    code, _, err = run(capsys, "--config", str(config), "escape")
    assert code == 2
    assert "run.cfg:2" in err
