import csv
import json
import math
import os
import re
from pathlib import Path

import pytest

from compspec.cli import (
    EXIT_ERROR,
    EXIT_EXACT,
    EXIT_PARTIAL,
    SAMPLES_PER_CIRCLE,
    Report,
    boundary_samples,
    main,
    parse_lambda,
)
from compspec.cli.report import build_report, descriptor_from_json, descriptor_to_json
from compspec.polycore import parse
from compspec.spectrum import Annulus, ClosedDiscMinusOrigin, Union, UnitCircle, spectrum_of

GOLDEN = Path(__file__).parent / "golden"

# the worked example symbols; file stem -> expression
EXAMPLES = {
    "translation": "x+1",
    "dilation": "2*x",
    "reflection": "-x",
    "quadratic_no_fixed_point": "x^2+1",
    "quadratic_x2_plus_x": "x^2+x",
    "quadratic_square": "x^2",
    "quadratic_quarter": "x^2+1/4",
    "cubic_positive_simple": "x+x^3",
    "cubic_positive_cube": "x^3",
    "cubic_negative_minus_x": "-x^3-x",
    "cubic_negative_minus_2x": "-x^3-2*x",
    "cubic_negative_cube": "-x^3",
    "cubic_negative_open": "-x^3+x-1",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def regenerate():
    """Rewrite the golden files; only for deliberate schema changes."""
    GOLDEN.mkdir(exist_ok=True)
    for stem, expr in EXAMPLES.items():
        (GOLDEN / f"{stem}.json").write_text(build_report(parse(expr)).to_json() + "\n", encoding="utf-8")


if os.environ.get("COMPSPEC_REGEN_GOLDEN"):
    regenerate()


@pytest.mark.parametrize("stem", sorted(EXAMPLES))
def test_golden_json(stem, capsys):
    expected = (GOLDEN / f"{stem}.json").read_text(encoding="utf-8")
    code, out, _ = run(capsys, "classify", EXAMPLES[stem], "--json")
    assert out == expected
    assert code == (EXIT_PARTIAL if stem == "cubic_negative_open" else EXIT_EXACT)


@pytest.mark.parametrize("stem", sorted(EXAMPLES))
def test_report_round_trip(stem):
    r = build_report(parse(EXAMPLES[stem]))
    back = Report.from_json(r.to_json())
    assert back == r
    assert back.to_json() == r.to_json()


def test_round_trip_keeps_sections():
    r = build_report(parse("x^2+1"))
    r.sections["growth"] = {"n": 1, "q": 3}
    back = Report.from_json(r.to_json())
    assert back.sections == {"growth": {"n": 1, "q": 3}}


def test_key_order_and_rational_strings():
    data = json.loads(build_report(parse("x^2+1/4")).to_json())
    assert list(data)[:6] == ["symbol", "coefficients", "degree", "symbol_class", "fixed_points", "spectrum"]
    assert data["coefficients"] == ["1/4", "0/1", "1/1"]
    fp = data["fixed_points"][0]
    assert fp["point_interval"] == ["1/2", "1/2"]
    assert fp["multiplicity"] == 2
    assert all(re.fullmatch(r"-?\d+/\d+", s) for s in fp["point_interval"])
    assert data["spectrum"] == {"status": "exact", "set": "closed_unit_disc", "provenance": data["spectrum"]["provenance"]}


def test_irrational_fixed_point_interval_isolates():
    data = json.loads(build_report(parse("x^2-2")).to_json())
    defining = [float(eval(c)) for c in data["fixed_points"][0]["defining_polynomial"]]
    for fp in data["fixed_points"]:
        lo, hi = (float(eval(s)) for s in fp["point_interval"])
        assert lo <= hi
    assert defining[-1] != 0


@pytest.mark.parametrize(
    "s",
    [
        Annulus(1, 3, True, False),
        Union([UnitCircle(), Annulus(0, 2, False, True)]),
    ],
)
def test_descriptor_json_parametrised_sets(s):
    from compspec.spectrum import SpectrumDescriptor, Status

    d = SpectrumDescriptor(Status.PARTIAL, lower=s, upper=None, provenance=())
    assert descriptor_from_json(json.loads(json.dumps(descriptor_to_json(d)))) == d


def test_classify_human_output(capsys):
    code, out, _ = run(capsys, "classify", "x^2+1")
    assert code == EXIT_EXACT
    assert "spectrum: exact {0}" in out
    assert "provenance: withoutfixedpoints, grau2a" in out


def test_classify_json_example(capsys):
    code, out, _ = run(capsys, "classify", "x+x^3", "--json")
    assert code == EXIT_EXACT
    spec = json.loads(out)["spectrum"]
    assert spec["status"] == "exact" and spec["set"] == "closed_disc_minus_origin"


def test_classify_syntax_error_column(capsys):
    code, _, err = run(capsys, "classify", "x^^2")
    assert code == EXIT_ERROR
    assert "column 3" in err


def test_classify_partial_exit_code(capsys):
    code, out, _ = run(capsys, "classify", "-x^3+x-1")
    assert code == EXIT_PARTIAL
    assert "partial" in out


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == EXIT_ERROR


@pytest.mark.parametrize(
    "symbol, lam, verdict",
    [("x^2+1/4", "1,0", "In"), ("x^2+1", "1,0", "Out"), ("x^2+1/4", "2,0", "Out"), ("-x", "-1,0", "In")],
)
def test_member(capsys, symbol, lam, verdict):
    code, out, _ = run(capsys, "member", symbol, "--lambda", lam)
    assert out.strip() == verdict
    assert code == EXIT_EXACT


def test_member_unknown_on_partial(capsys):
    code, out, _ = run(capsys, "member", "-x^4+x", "--lambda", "3,0")
    assert code == EXIT_PARTIAL
    assert out.strip() == "Unknown"


def test_parse_lambda():
    from fractions import Fraction

    assert parse_lambda("1/2,-3") == (Fraction(1, 2), Fraction(-3))
    assert parse_lambda("0.25") == (Fraction(1, 4), 0)
    with pytest.raises(ValueError):
        parse_lambda("1,2,3")


def test_resolvent_line(capsys, tmp_path):
    out_csv = tmp_path / "f.csv"
    code, out, _ = run(capsys, "resolvent", "x^2+2", "--lambda", "1,0", "--g", "gaussian", "--out", str(out_csv))
    assert code == EXIT_EXACT
    value = float(re.search(r"max_residual: (\S+)", out).group(1))
    assert value < 1e-9
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["x", "re", "im"] and len(rows) == 1602


def test_resolvent_inside_spectrum_fails_loudly(capsys):
    code, _, err = run(capsys, "resolvent", "x^2+1/4", "--lambda", "0.5,0", "--grid", "10,801")
    assert code == EXIT_ERROR
    assert "warning" in err and "error" in err


def test_witness_table(capsys):
    code, out, _ = run(capsys, "witness", "x^2+1/4", "--lambda", "0.5,0")
    assert code == EXIT_EXACT
    rows = [line.split() for line in out.splitlines() if re.match(r"\s*\d+\s", line)]
    assert len(rows) == 13
    for m, row in enumerate(rows):
        assert int(row[0]) == m
        assert math.isclose(float(row[3]), 2.0 ** (m + 1), rel_tol=1e-12)
    assert "divergence_flag: true" in out


def test_witness_json_out(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _, _ = run(capsys, "witness", "x^2+1/4", "--lambda", "1,0", "--json", "--out", str(path))
    assert code == EXIT_EXACT
    data = json.loads(path.read_text())
    assert data["divergence_flag"] is True


def test_witness_outside_hypotheses(capsys):
    code, _, err = run(capsys, "witness", "x^2+1", "--lambda", "0.5,0")
    assert code == EXIT_ERROR
    assert "fixed point" in err


def test_dynamics_squaring(capsys):
    code, out, _ = run(capsys, "dynamics", "x^2+1", "--K", "1")
    assert code == EXIT_EXACT
    assert "N=2, a=2" in out


def test_dynamics_growth_failure_lists_witnesses(capsys):
    code, out, err = run(capsys, "dynamics", "x^2", "--r", "1")
    assert code == EXIT_ERROR
    assert "witness m=12 x=1.0 derivative=4096" in out
    assert err == ""


def test_dynamics_csv(capsys, tmp_path):
    path = tmp_path / "g.csv"
    code, out, _ = run(capsys, "dynamics", "x^2+1/4", "--r", "2", "--out", str(path))
    assert code == EXIT_EXACT
    assert "growth: r=2" in out
    assert path.read_text().splitlines()[0].count(",") >= 2


def test_plot_data_circle(capsys, tmp_path):
    path = tmp_path / "p.csv"
    code, _, _ = run(capsys, "classify", "x^2+1/4", "--plot-data", str(path))
    assert code == EXIT_EXACT
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["bound", "feature", "re", "im"]
    body = rows[1:]
    assert len(body) == SAMPLES_PER_CIRCLE
    for _, _, x, y in body:
        assert abs(math.hypot(float(x), float(y)) - 1) < 1e-15
    # 17 significant digits survive a float round trip
    assert all(float(x) == float(repr(float(x))) for _, _, x, _ in body)


def test_plot_data_punctured_disc(capsys, tmp_path):
    path = tmp_path / "p.csv"
    run(capsys, "classify", "x+x^3", "--plot-data", str(path))
    features = [r[1] for r in list(csv.reader(path.open()))[1:]]
    assert features.count("circle") == SAMPLES_PER_CIRCLE
    assert features.count("puncture") == 1


def test_plot_data_partial_has_both_bounds(tmp_path):
    from compspec.cli import write_plot_data

    path = tmp_path / "p.csv"
    write_plot_data(path, spectrum_of(parse("-x^4+x")))
    bounds = {r[0] for r in list(csv.reader(path.open()))[1:]}
    assert bounds <= {"lower", "upper"} and "lower" in bounds


def test_boundary_samples_annulus():
    rows = boundary_samples(Annulus(1, 2, True, True))
    assert len(rows) == 2 * SAMPLES_PER_CIRCLE
    assert boundary_samples(ClosedDiscMinusOrigin())[-1] == ("puncture", 0.0, 0.0)
