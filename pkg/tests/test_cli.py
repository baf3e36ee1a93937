import argparse
import json
import subprocess
import sys

import pytest

from monotone_moments.cli import dumps_report, main, parse_complex


@pytest.fixture
def sc_file(tmp_path):
    path = tmp_path / "sc.json"
    path.write_text(json.dumps({"phi": [[0, 0], [1, 0]]}))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_complex_parsing():
    assert parse_complex("2+0i") == 2
    assert parse_complex("3-1.5i") == 3 - 1.5j
    assert parse_complex("2i") == 2j
    assert parse_complex("-i") == -1j
    assert parse_complex("1e-3+2e-4i") == 1e-3 + 2e-4j
    for bad in ("2j", "x", "", "1+2k"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_complex(bad)


def test_span_example(sc_file, capsys):
    code, out, _ = run(
        ["span", "--alpha", "2+0i", "--beta", "3+0i", "--b-mean", "1", "--b-second", "2", "--a-moments", sc_file, "--k", "2"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert list(report) == ["command", "params", "rows", "pass"]
    assert report["rows"][0]["k"] == 2 and report["rows"][0]["value"] == [31.0, 0.0]
    assert report["pass"] is True


def test_oracle_check_example(capsys):
    code, out, _ = run(["oracle-check", "--trials", "100", "--kmax", "8", "--tol", "1e-9", "--seed", "42"], capsys)
    assert code == 0 and json.loads(out)["pass"]


@pytest.mark.parametrize(
    "argv",
    [
        ["anticomm", "--b-mean", "1", "--b-second", "2", "--a-moments", "semicircle", "--kmax", "6"],
        ["comm", "--b-mean", "1", "--b-second", "2", "--a-moments", "bernoulli", "--k", "2", "3"],
        ["inf-span", "--alpha", "1", "--beta", "1", "--b-mean", "0.5", "--b-second", "1", "--b-mean-prime", "1",
         "--b-second-prime", "-0.5", "--a-moments", "semicircle", "--kmax", "5"],
        ["general", "--b11", "2", "--b22", "14", "--b12", "5", "--bt1", "1", "--bt2", "2", "--ct1", "1", "--ct2", "1",
         "--a-moments", "bernoulli", "--kmax", "4"],
        ["wigner-limit", "--kind", "general", "--nmhs", "1,2,1,1", "--kmax", "3"],
        ["wigner-limit", "--kind", "t", "--m", "2", "--kmax", "4"],
        ["lift-check", "--trials", "10"],
        ["catalan-check"],
    ],
)
def test_subcommands_pass(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    assert json.loads(out)["pass"] is True


def test_anticomm_values(capsys):
    _, out, _ = run(["anticomm", "--b-mean", "1", "--b-second", "2", "--a-moments", "semicircle", "--k", "2"], capsys)
    assert json.loads(out)["rows"][0]["value"][0] == pytest.approx(5, abs=1e-12)
    _, out, _ = run(["comm", "--b-mean", "1", "--b-second", "2", "--a-moments", "semicircle", "--k", "2"], capsys)
    assert json.loads(out)["rows"][0]["value"][0] == pytest.approx(1, abs=1e-12)


def test_wigner_limit_reports_both_readings(capsys):
    code, out, _ = run(["wigner-limit", "--alpha", "2i", "--m", "1", "--k", "2"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row["value"] == [4.0, 0.0] and row["abs_alpha_reading"] == [2.0, 0.0] and row["readings_differ"]


def test_tolerance_failure_exit_code(capsys):
    code, out, _ = run(["lift-check", "--trials", "2", "--tol", "-1"], capsys)
    assert code == 1 and json.loads(out)["pass"] is False


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["span", "--alpha", "2x", "--beta", "1", "--b-mean", "1", "--b-second", "2", "--a-moments", "semicircle"], "2x"),
        (["span", "--alpha", "1", "--beta", "1", "--b-mean", "1", "--b-second", "2", "--a-moments", "/no/such.json"],
         "/no/such.json"),
        (["catalan-check", "--bogus"], "--bogus"),
        (["rmt", "--n", "10", "--n0", "20", "--samples", "2"], "n0"),
        (["rmt", "--seed", "-3"], "seed"),
        (["wigner-limit", "--kind", "general", "--nmhs", "1,2"], "nmhs"),
    ],
)
def test_usage_errors(argv, needle, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and needle in err


def test_malformed_and_short_moment_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"phi": [[1, 2, 3]]}')
    code, _, err = run(
        ["span", "--alpha", "1", "--beta", "2", "--b-mean", "1", "--b-second", "2", "--a-moments", str(bad)], capsys
    )
    assert code == 2 and str(bad) in err
    short = tmp_path / "short.json"
    short.write_text('{"phi": [[0, 0], [1, 0]], "phi_prime": [[0, 0], [0.5, 0]]}')
    code, _, err = run(
        ["span", "--alpha", "1", "--beta", "2", "--b-mean", "1", "--b-second", "2", "--a-moments", str(short), "--k", "3"],
        capsys,
    )
    assert code == 2 and "horizon" in err
    code, out, _ = run(
        ["span", "--alpha", "1", "--beta", "2", "--b-mean", "1", "--b-second", "2", "--a-moments", str(short), "--k", "2"],
        capsys,
    )
    assert code == 0 and json.loads(out)["rows"][0]["eps"][0] != 0


def test_csv_output(capsys):
    code, out, _ = run(["catalan-check", "--nmax", "4", "--format", "csv"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "k,value_re,value_im,eps_re,eps_im,std_error,prediction_re,prediction_im,gap"
    assert len(lines) == 6 and lines[5].startswith("4,14.0,")


def test_float_round_trip(capsys):
    argv = ["span", "--alpha", "0.1+0.3i", "--beta", "0.333", "--b-mean", "0.7", "--b-second", "1.9",
            "--a-moments", "semicircle", "--kmax", "6"]
    _, out, _ = run(argv, capsys)
    report = json.loads(out)
    assert dumps_report(report) + "\n" == out
    for row in report["rows"]:
        for x in row["value"] + row["eps"]:
            assert float(format(x, ".17g")) == x


def test_rmt_small_run(capsys):
    argv = ["rmt", "--spec", "span", "--alpha", "1+1i", "--k", "1", "2", "--n", "60", "--n0", "3", "--samples", "8",
            "--seed", "18446744073709551615"]
    code, out, _ = run(argv, capsys)
    row = json.loads(out)["rows"][1]
    assert set(row) >= {"k", "value", "std_error", "prediction", "gap"}
    assert code in (0, 1)


@pytest.mark.parametrize(
    "argv",
    [
        ["oracle-check", "--trials", "5", "--seed", "123"],
        ["rmt", "--spec", "t", "--k", "1", "2", "--n", "50", "--n0", "5", "--samples", "6", "--seed", "4"],
        ["rmt", "--spec", "trace", "--k", "2", "4", "--n", "50", "--samples", "6", "--seed", "4", "--format", "csv"],
    ],
)
def test_byte_identical_reruns(argv, capsys):
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second and first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "monotone_moments", "catalan-check", "--nmax", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["command"] == "catalan-check"
