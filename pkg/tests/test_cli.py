import json
import math
import subprocess
import sys

import pytest

from gnsharp import cli
from gnsharp.cli import (EXIT_CHECK, EXIT_OK, EXIT_PARAMS, EXIT_USAGE,
                         main, record_from_json, render_json)

from conftest import load_oracles

ORACLES = load_oracles()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# constant
# ---------------------------------------------------------------------------

def test_constant_json_golden(capsys):
    code, out, err = run(capsys, "constant", "--d", "1", "--p", "2",
                         "--q", "0", "--m", "3", "--no-timestamps")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema"] == "gn-sharp/1"
    assert payload["command"] == "constant"
    C = payload["results"]["C"]
    assert C == pytest.approx((4.0 * math.pi ** 2 / 9.0) ** -0.25, rel=1e-12)
    assert payload["results"]["method"] == "closed_form"
    assert payload["params"]["m"] == 3.0


def test_constant_m_infinity_spelling(capsys):
    code, out, _ = run(capsys, "constant", "--d", "1", "--p", "2",
                       "--q", "0", "--m", "inf", "--no-timestamps")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["params"]["m"] == "inf"
    oc = ORACLES["m_infinity"]["d1_p2_q0"]
    assert payload["results"]["C"] == pytest.approx(oc["C"], rel=1e-12)


def test_constant_byte_determinism(capsys):
    args = ("constant", "--d", "2", "--p", "2", "--q", "0", "--m", "1",
            "--method", "numeric", "--no-timestamps")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_constant_text_and_csv(capsys):
    code, out, _ = run(capsys, "constant", "--d", "1", "--p", "2", "--q", "1",
                       "--m", "5", "--format", "text", "--no-timestamps")
    assert code == EXIT_OK
    assert "C" in out and "=" in out
    code, out, _ = run(capsys, "constant", "--d", "1", "--p", "2", "--q", "1",
                       "--m", "5", "--format", "csv", "--no-timestamps")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].split(",")[:4] == ["d", "p", "q", "m"]


def test_constant_out_file(tmp_path, capsys):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "constant", "--d", "1", "--p", "2", "--q", "0",
                       "--m", "3", "--out", str(target), "--no-timestamps")
    assert code == EXIT_OK
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["results"]["C"] > 0.0


def test_record_round_trip(capsys):
    _, out, _ = run(capsys, "constant", "--d", "1", "--p", "3", "--q", "1",
                    "--m", "5", "--no-timestamps")
    rec = record_from_json(out)
    assert render_json(rec.to_payload()) == out


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

def test_profile_text_columns(capsys):
    code, out, _ = run(capsys, "profile", "--d", "1", "--p", "2", "--q", "0",
                       "--m", "3", "--format", "text", "--points", "12",
                       "--no-timestamps")
    assert code == EXIT_OK
    lines = out.splitlines()
    headers = [ln for ln in lines if ln.startswith("#")]
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    assert any("columns: r u" in h for h in headers)
    assert len(rows) == 12
    r0, u0 = map(float, rows[0].split())
    assert r0 == 0.0
    assert u0 == pytest.approx(max(float(r.split()[1]) for r in rows))


def test_profile_json_support_block(capsys):
    code, out, _ = run(capsys, "profile", "--d", "2", "--p", "2", "--q", "3",
                       "--m", "5", "--method", "closed", "--points", "40",
                       "--format", "json", "--no-timestamps")
    assert code == EXIT_OK
    payload = json.loads(out)
    res = payload["results"]
    assert res["support"]["kind"] == "infinite"
    assert res["support"]["decay"] == "algebraic"
    assert res["family"] != "numeric-grid"
    assert len(res["r"]) == 40 and len(res["u"]) == 40


def test_profile_numeric_method(capsys):
    code, out, _ = run(capsys, "profile", "--d", "2", "--p", "2", "--q", "0",
                       "--m", "1", "--method", "numeric", "--points", "30",
                       "--format", "json", "--no-timestamps")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["results"]["family"] == "numeric-grid"
    assert payload["results"]["source"] == "numeric"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_nash_d2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "nash", "--d", "2",
                       "--p", "2", "--no-timestamps")
    assert code == EXIT_OK
    payload = json.loads(out)
    checks = payload["results"]["checks"]
    assert all(c["status"] == "passed" for c in checks)
    assert payload["results"]["counts"]["failed"] == 0


def test_verify_all_d1_text(capsys):
    code, out, _ = run(capsys, "verify", "--d", "1", "--p", "2", "--q", "1",
                       "--m", "5", "--samples", "8", "--format", "text",
                       "--no-timestamps")
    assert code == EXIT_OK
    assert "[PASSED]" in out
    assert "failed 0" in out


def test_verify_failure_exit_code(monkeypatch, capsys):
    from gnsharp.verify import NashReport

    def fake(params):
        return NashReport(R=3.0, eigenvalue=9.0, bessel_value=3.8,
                          eigen_rel_err=0.2, equation_residual=0.1,
                          boundary_slope=0.5)

    monkeypatch.setattr(cli.verification, "nash_eigen_check", fake)
    code, out, _ = run(capsys, "verify", "--suite", "nash", "--d", "2",
                       "--p", "2", "--no-timestamps")
    assert code == EXIT_CHECK
    payload = json.loads(out)
    assert payload["results"]["counts"]["failed"] >= 1


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------

def test_limit_honest_nonconvergence(capsys):
    code, out, _ = run(capsys, "limit", "--p", "2", "--q", "0",
                       "--m-list", "3,5,9,17", "--no-timestamps")
    assert code == EXIT_OK  # monotone tail: not a failure, just not converged
    payload = json.loads(out)
    res = payload["results"]
    assert res["tail_monotone"] is True
    assert res["converged"] is False
    assert res["targets"]["C"] == pytest.approx(
        ORACLES["limit_targets"]["p2_q0"]["C"], rel=1e-12)
    assert len(res["rows"]) == 4


def test_limit_rejects_high_dimension(capsys):
    code, _, err = run(capsys, "limit", "--d", "2", "--p", "2", "--q", "0",
                       "--m-list", "3,5,9", "--no-timestamps")
    assert code == EXIT_PARAMS
    assert err != ""


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def test_table_sweep_with_inline_errors(capsys):
    code, out, _ = run(capsys, "table", "--d", "1", "--p-list", "2",
                       "--q-list", "0,1", "--m-list", "3,0.5",
                       "--no-timestamps")
    # q=1, m=0.5 violates m > q; that row carries the error inline
    assert code == EXIT_OK
    payload = json.loads(out)
    rows = payload["results"]["rows"]
    assert len(rows) == 4
    errs = [r for r in rows if r.get("error") is not None]
    good = [r for r in rows if r.get("error") is None]
    assert len(errs) == 1 and len(good) == 3
    assert all(r["C"] > 0 for r in good)
    assert "m <= q" in errs[0]["error"]


def test_table_all_rows_failing(capsys):
    code, _, _ = run(capsys, "table", "--d", "1", "--p-list", "2",
                     "--q-list", "5", "--m-list", "3", "--no-timestamps")
    assert code == 3


def test_table_csv_shape(capsys):
    code, out, _ = run(capsys, "table", "--d", "1", "--p-list", "2,3",
                       "--q-list", "1", "--m-list", "5,inf", "--format",
                       "csv", "--no-timestamps")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 5
    header = lines[0].split(",")
    assert "C" in header and "theta" in header


def test_table_parallel_matches_serial(capsys):
    args = ("table", "--d", "1", "--p-list", "2,3", "--q-list", "0,1",
            "--m-list", "3,9", "--no-timestamps")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--parallel", "4")
    # config records the worker count; the computed rows must not change
    assert json.loads(serial)["results"] == json.loads(parallel)["results"]


# ---------------------------------------------------------------------------
# exit codes and usage errors
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ("constant", "--d", "1", "--p", "2", "--q", "0"),          # missing m
    ("constant", "--d", "1", "--p", "2", "--q", "0", "--m", "nan"),
    ("profile", "--d", "1", "--p", "2", "--q", "0", "--m", "3",
     "--points", "1"),
    ("limit", "--p", "2", "--q", "0", "--m-list", "5,3,9"),    # not increasing
    ("table", "--d", "1", "--p-list", "", "--q-list", "0", "--m-list", "3"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err != ""


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    capsys.readouterr()
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ("constant", "--d", "2", "--p", "2", "--q", "0", "--m", "inf"),  # p <= d
    ("constant", "--d", "1", "--p", "2", "--q", "5", "--m", "3"),    # m < q
    ("profile", "--d", "2", "--p", "2", "--q", "1", "--m", "5",
     "--method", "closed"),  # no closed family there
])
def test_param_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_PARAMS
    assert err != ""


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    out = capsys.readouterr().out
    assert exc.value.code == 0
    assert out.strip() == cli.VERSION


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "gnsharp.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == cli.VERSION
