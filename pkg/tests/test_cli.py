import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from pjroot.cli import (
    EXIT_NOT_COPRIME,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PIPELINE,
    RunConfig,
    main,
    parse_transfer_function,
    run,
)
from pjroot.parsing import ParseError, parse_polynomial
from pjroot.pencil import NotCoprimeError
from pjroot.polycore import MultiPoly

S = ("s",)


# -- parsing ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,num,den",
    [
        ("(s+1)/s^2", "s+1", "s^2"),
        ("1/(s*((s+4)^2+4^2))", "1", "s^3+8*s^2+32*s"),
        ("s/(s^2+1)", "s", "s^2+1"),
        ("(1-s^2)/(1+s^2)", "1-s^2", "s^2+1"),
        ("0.5*s/(2*s^2+2)", "1/4*s", "s^2+1"),
        ("s**2 + 3", "s^2+3", "1"),
    ],
)
def test_parse_transfer_function(text, num, den):
    G = parse_transfer_function(text)
    assert G.num == P(num, S)
    assert G.den == P(den, S)


def test_parse_rejects_common_factor():
    with pytest.raises(NotCoprimeError) as err:
        parse_transfer_function("(s+1)/(s+1)")
    assert err.value.factor == P("s+1", S)


@pytest.mark.parametrize("text,pos", [("(s+1)/s^", 8), ("s + $", 4), ("(s+1", 4), ("x/s", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_transfer_function(text)
    assert err.value.position == pos


def test_parse_rejects_zero_parts():
    with pytest.raises(ParseError):
        parse_transfer_function("1/(s-s)")
    with pytest.raises(ParseError):
        parse_transfer_function("0/s")


def test_decimal_literals_are_exact():
    assert parse_polynomial("0.1*s", S) == MultiPoly({(1,): Fraction(1, 10)}, S)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                                 st.fractions(min_value=-9, max_value=9, max_denominator=7), max_size=5))
    return MultiPoly(terms, ("x", "y"))


@settings(max_examples=80)
@given(polys())
def test_print_parse_fixpoint(p):
    text = str(p)
    q = parse_polynomial(text, ("x", "y"))
    assert q == p
    assert str(q) == text


# -- config ----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        {"samples": 1},
        {"k_min": Fraction(1), "k_max": Fraction(0)},
        {"k_min": Fraction(1)},
        {"patch": "yz"},
        {"emit": ("csv", "png")},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(plant="1/s", **kwargs)


# -- runs ------------------------------------------------------------------------------


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="module")
def double_pole_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    result = run(RunConfig(plant="(s+1)/s^2", patch="all", samples=120, out_dir=str(out), symbolic_lambda=True))
    return out, result


def test_run_writes_every_artifact(double_pole_run):
    out, result = double_pole_run
    expected = {
        "locus.csv", "complementary.csv", "complementary_xz.csv", "report.json", "sphere.json",
        "locus.svg", "complementary.svg", "complementary_xz.svg", "sphere.svg",
    }
    assert set(result.files) == expected
    assert sorted(os.listdir(out)) == sorted(expected)


def test_report_endpoints(double_pole_run):
    out, _ = double_pole_run
    rep = json.loads(_read(out / "report.json"))
    assert rep["initial"]["points"] == [["0", "0", "1"]]
    assert rep["terminal"]["points"] == [["-1", "0", "1"], ["1", "0", "0"]]
    assert rep["terminal"]["infinite"] == [["1", "0", "0"]]
    assert rep["asymptotes"]["xy"]["terminal"] == ["0"]
    assert rep["plant"]["den"] == "s^2"
    assert rep["symbolic_lambda"]["variables"] == ["x", "y", "z", "lam"]
    assert "y^3 + 2*y*z + y" in rep["symbolic_lambda"]["views"]["zy"]


def test_csv_layout(double_pole_run):
    out, result = double_pole_run
    rows = list(csv.reader(io.StringIO(_read(out / "locus.csv"))))
    assert rows[0] == ["k", "branch_id", "x", "y"]
    # every sample has both branches
    assert len(rows) - 1 == 120 * 2
    comp = list(csv.reader(io.StringIO(_read(out / "complementary.csv"))))
    assert comp[0] == ["k", "branch_id", "z", "y", "blow_up"]
    assert len(comp) == len(rows)
    # the double pole at the origin sits on the chart's line at infinity
    zero = [r for r in comp[1:] if r[0] == "0"]
    assert zero and all(r[4] == "1" and r[2] == r[3] == "" for r in zero)
    xz = list(csv.reader(io.StringIO(_read(out / "complementary_xz.csv"))))
    assert xz[0] == ["k", "branch_id", "x", "z", "blow_up"]


def test_sphere_json_is_unit(double_pole_run):
    out, _ = double_pole_run
    data = json.loads(_read(out / "sphere.json"))
    assert data["initial"] == [[0.0, 0.0, 1.0]]
    for b in data["branches"]:
        for X, Y, Z in b["points"]:
            assert abs(X * X + Y * Y + Z * Z - 1) < 1e-9 and Z >= 0


def test_svg_output(double_pole_run):
    out, _ = double_pole_run
    text = _read(out / "locus.svg")
    assert text.lstrip().startswith("<?xml") and "</svg>" in text


def test_outputs_are_deterministic(tmp_path):
    texts = []
    for i in range(2):
        d = tmp_path / str(i)
        run(RunConfig(plant="1/(s*((s+4)^2+4^2))", samples=80, out_dir=str(d)))
        texts.append({n: _read(d / n) for n in sorted(os.listdir(d))})
    assert texts[0] == texts[1]


def test_degree_drop_rows_omitted(tmp_path):
    result = run(RunConfig(plant="(1-s^2)/(1+s^2)", k_min=Fraction(0), k_max=Fraction(2), samples=5,
                           emit=("csv", "json"), patch="xy", out_dir=str(tmp_path)))
    rows = list(csv.reader(io.StringIO(_read(tmp_path / "locus.csv"))))
    assert {r[0] for r in rows[1:]} == {"0", "1/2", "3/2", "2"}
    assert len(rows) - 1 == 4 * 2
    assert result.report.sweep["degree_drop_k"] == ["1"]


def test_third_order_report(tmp_path):
    result = run(RunConfig(plant="1/(s*((s+4)^2+4^2))", samples=100, emit=("json",), out_dir=str(tmp_path)))
    rep = json.loads(_read(tmp_path / "report.json"))
    slopes = rep["asymptotes"]["xy"]["terminal"]
    assert slopes[1] == "0"
    assert slopes[0]["poly"] == slopes[2]["poly"] == "m^2 - 3"
    assert abs(slopes[2]["float"] - 3 ** 0.5) < 1e-9
    assert any(abs(k - 256) < 1e-6 for k in rep["sweep"]["axis_crossings"])


def test_imag_poles_complementary_asymptotes(tmp_path):
    result = run(RunConfig(plant="s/(s^2+1)", patch="zy", samples=60, emit=("json",), out_dir=str(tmp_path)))
    asym = result.report.asymptotes["zy"]
    assert asym["initial"] == [-1, 1]
    assert asym["terminal"] == [0]


# -- exit codes ------------------------------------------------------------------------


def test_main_exit_codes(tmp_path, capsys):
    assert main(["--plant", "(s+1)/s^2", "--emit", "json", "--samples", "20", "--out", str(tmp_path)]) == EXIT_OK
    assert "initial" in capsys.readouterr().out
    assert main(["--plant", "(s+1/s^", "--out", str(tmp_path)]) == EXIT_PARSE
    assert main(["--plant", "(s+1)/(s^2-1)", "--out", str(tmp_path)]) == EXIT_NOT_COPRIME


def test_pipeline_failure_exit_code(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    # the output directory cannot be created below a regular file
    code = main(["--plant", "1/s", "--emit", "json", "--samples", "10", "--out", str(blocker / "sub")])
    assert code == EXIT_PIPELINE
    assert not (blocker / "sub").exists()


def test_bad_arguments_exit_through_argparse(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["--plant", "1/s", "--samples", "1", "--out", str(tmp_path)])
    assert err.value.code == 2


def test_console_script(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pjroot.cli", "--plant", "s/(s^2+1)", "--patch", "xy", "--emit", "csv",
         "--samples", "20", "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "locus.csv").exists()
