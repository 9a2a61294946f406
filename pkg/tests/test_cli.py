import csv
import io
import json
import math
import subprocess
import sys

import pytest

from trisqueeze import cli
from trisqueeze.squeezing import uncertainty_product, variance_closed_form


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_state_vacuum_json(capsys):
    code, out, _ = run(["state"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["cutoff"] == 1 and payload["ordering"] == "n1-major"
    assert payload["amplitudes"][0] == [1.0, 0.0]
    assert "-0.0" not in out


def test_state_verify_reports_fidelity(capsys):
    code, out, _ = run(["state", "--mu", "0.3", "--nu", "0.2", "--verify"], capsys)
    assert code == 0
    assert json.loads(out)["fidelity"] > 1 - 1e-8


def test_state_csv(capsys):
    code, out, _ = run(["state", "--mu", "0.2", "--cutoff", "6", "--format", "csv"], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 7**3
    assert rows[0]["n1"] == "0" and float(rows[0]["re"]) == pytest.approx(1 / math.cosh(0.2))


def test_state_small_cutoff_is_truncation(capsys):
    code, _, err = run(["state", "--mu", "0.6", "--nu", "0.45", "--cutoff", "5"], capsys)
    assert code == 3
    assert "use cutoff >=" in err


def test_variance_csv(capsys):
    code, out, _ = run(["variance", "--mu", "0.6", "--nu", "0.45"], capsys)
    (row,) = parse_csv(out)
    ref = variance_closed_form(0.6, 0.45)
    assert code == 0
    assert float(row["var_x1"]) == ref.var_x1 and float(row["var_x2"]) == ref.var_x2


def test_uncertainty_json(capsys):
    code, out, _ = run(["uncertainty", "--mu", "0.5", "--nu", "0.5", "--format", "json"], capsys)
    (row,) = json.loads(out)
    assert code == 0
    assert row["product"] == uncertainty_product(0.5, 0.5)
    assert row["theta"] == pytest.approx(math.pi / 4)


def test_wigner_sweep(capsys):
    code, out, _ = run(["wigner", "--mu", "0.5", "--sweep", "q1=-1:1:3", "--sweep", "p1=-1:1:5", "--at", "q2=0.2"], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 15
    assert list(rows[0])[:2] == ["q1", "p1"] and list(rows[0])[-1] == "w_value"
    assert all(float(r["q2"]) == 0.2 for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["variance", "--mu", "nan"],
        ["variance", "--mu", "inf"],
        ["state", "--cutoff", "0"],
        ["state", "--tol", "1e-3"],
        ["wigner", "--sweep", "q9=-1:1:3"],
        ["wigner", "--sweep", "q1=-1:1:3", "--at", "oops"],
        ["frobnicate"],
    ],
)
def test_invalid_arguments_exit_2(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


def test_out_of_range_squeezing_exit_2(capsys):
    code, _, _ = run(["state", "--mu", "4"], capsys)
    assert code == 2


def test_fig1_data(capsys):
    code, out, _ = run(["fig1"], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 101
    assert float(rows[0]["var_x1_nu0"]) == 0.25
    x2 = [float(r["var_x2_nu0"]) for r in rows]
    assert all(b > a for a, b in zip(x2, x2[1:]))
    enhanced = [float(r["var_x2_nu05"]) >= float(r["var_x2_nu0"]) for r in rows if float(r["mu"]) >= 0.2]
    assert all(enhanced)


def test_fig2_data(capsys):
    code, out, _ = run(["fig2", "--format", "json"], capsys)
    rows = json.loads(out)
    assert code == 0 and len(rows) == 151
    assert rows[-1]["r"] == 1.5
    assert all(v >= 0.25 - 1e-12 for row in rows for k, v in row.items() if k != "r")


def test_output_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["fig2", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"\r\n" not in paths[0].read_bytes()


def test_floats_round_trip(capsys):
    _, out, _ = run(["uncertainty", "--mu", "0.1", "--nu", "0.7"], capsys)
    (row,) = parse_csv(out)
    assert float(row["product"]) == uncertainty_product(0.1, 0.7)


def test_selfcheck_with_injected_cutoff(capsys):
    code, out, _ = run(["selfcheck", "--cutoff", "4", "--json"], capsys)
    payload = json.loads(out)
    assert code == 4 and payload["passed"] is False
    by_number = {c["number"]: c for c in payload["checks"]}
    assert by_number[1]["passed"]
    assert "TruncationError" in by_number[2]["message"]
    assert by_number[2]["residual"] is None


def test_console_script_runs():
    out = subprocess.run(
        [sys.executable, "-m", "trisqueeze.cli", "variance", "--mu", "0.1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.startswith("mu,nu,var_x1")


def test_state_two_mode_amplitudes(capsys):
    code, out, _ = run(["state", "--mu", "0.6", "--nu", "0", "--cutoff", "24"], capsys)
    payload = json.loads(out)
    d = 25
    assert code == 0
    for n in range(8):
        re, im = payload["amplitudes"][(n * d + n) * d]
        assert re == pytest.approx((-math.tanh(0.6)) ** n / math.cosh(0.6), abs=1e-15)
        assert im == 0.0


def test_state_verify_three_mode(capsys):
    code, out, _ = run(["state", "--mu", "0.6", "--nu", "0.45", "--verify"], capsys)
    assert code == 0 and json.loads(out)["fidelity"] > 1 - 1e-8


def test_uncertainty_matches_formula(capsys):
    _, out, _ = run(["uncertainty", "--mu", "0.3", "--nu", "0.4"], capsys)
    (row,) = parse_csv(out)
    r = 0.5
    sin2 = 2 * 0.6 * 0.8
    expected = math.sqrt(4 * math.cosh(2 * r) + 4 + (1 - 2 * math.sinh(r) ** 2 * sin2) ** 2) / 12
    assert float(row["product"]) == pytest.approx(expected, rel=1e-14)


def test_wigner_peak_at_origin(capsys):
    _, out, _ = run(["wigner", "--mu", "0.5", "--nu", "0.3", "--sweep", "q1=-2:2:41"], capsys)
    rows = parse_csv(out)
    values = [float(r["w_value"]) for r in rows]
    assert len(rows) == 41
    peak = max(range(41), key=values.__getitem__)
    assert float(rows[peak]["q1"]) == 0.0
    assert values[peak] == pytest.approx(1 / math.pi**3, rel=1e-15)


def test_fig1_first_row(capsys):
    _, out, _ = run(["fig1"], capsys)
    row = parse_csv(out)[0]
    ref = variance_closed_form(0, 0.5)
    assert float(row["var_x1_nu0"]) == float(row["var_x2_nu0"]) == 0.25
    assert float(row["var_x1_nu05"]) == ref.var_x1 and float(row["var_x2_nu05"]) == ref.var_x2
