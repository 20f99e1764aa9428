"""Command-line surface: parsing, exit codes, and emitted artifacts."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from petalmap.cli import (
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    UsageError,
    main,
    parse_angle,
    parse_complex,
    parse_grid,
)


def run_cli(*argv):
    return main(list(argv))


# ---------------------------------------------------------------------------
# parsers


def test_parse_angle():
    assert parse_angle("pi") == math.pi
    assert parse_angle("3pi/16") == 3 * math.pi / 16
    assert parse_angle("pi/4") == math.pi / 4
    assert parse_angle("0.5") == 0.5
    for bad in ("tau", "pi/0", "2 radians"):
        with pytest.raises(UsageError):
            parse_angle(bad)


def test_parse_complex():
    assert parse_complex("0+0.8i") == 0.8j
    assert parse_complex("1+2j") == 1 + 2j
    assert parse_complex("-1.5") == -1.5
    with pytest.raises(UsageError):
        parse_complex("north")


def test_parse_grid():
    vals = parse_grid("pi/8:pi/4:3", "--alpha-grid")
    assert len(vals) == 3
    assert vals[0] == pytest.approx(math.pi / 8)
    assert vals[-1] == pytest.approx(math.pi / 4)
    assert parse_grid("pi/4:pi/2:1", "--x") == [math.pi / 4]
    for bad in ("pi/8:pi/4", "pi/8:pi/4:0", "pi/8:pi/4:-2", "a:b:c"):
        with pytest.raises(UsageError):
            parse_grid(bad, "--x")


# ---------------------------------------------------------------------------
# trace


def test_trace_writes_csv_and_svg(tmp_path):
    out = tmp_path / "trace.csv"
    svg = tmp_path / "trace.svg"
    code = run_cli(
        "trace", "--family", "one-petal", "--alpha", "pi/4",
        "--T", "2", "--A", "1", "--n", "128",
        "--out", str(out), "--svg", str(svg),
    )
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "phi,x,y"
    assert len(lines) == 129
    body = svg.read_text()
    assert body.startswith("<svg") and "polyline" in body


def test_trace_deterministic_bytes(tmp_path):
    args = (
        "trace", "--family", "two-petal", "--alpha", "pi/4", "--beta", "pi/8",
        "--n", "64",
    )
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(*args, "--out", str(a)) == EXIT_OK
    assert run_cli(*args, "--out", str(b)) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_trace_csv_round_trip(tmp_path):
    from petalmap.cli import _read_trace_csv, _trace_csv

    out = tmp_path / "t.csv"
    run_cli("trace", "--family", "one-petal", "--alpha", "pi/3", "--n", "64", "--out", str(out))
    raw = out.read_text()
    data = np.genfromtxt(str(out), delimiter=",", names=True)
    points = _read_trace_csv(str(out))

    class Bare:
        phis = data["phi"]

    Bare.points = points
    assert _trace_csv(Bare) == raw  # bit-exact re-serialization


def test_trace_nonconformal_sidecar(tmp_path, capsys):
    out = tmp_path / "nc.csv"
    code = run_cli(
        "trace", "--family", "two-petal", "--alpha", "pi/8", "--beta", "pi/6",
        "--n", "64", "--out", str(out),
    )
    assert code == EXIT_OK
    assert out.exists()
    meta = json.loads((tmp_path / "nc.csv.meta.json").read_text())
    assert meta["warning"] == "nonconformal"
    assert meta["derivative_winding"] != 0
    assert "not conformal" in capsys.readouterr().err


def test_trace_requires_output(tmp_path, capsys):
    code = run_cli("trace", "--family", "one-petal", "--alpha", "pi/4")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# verify


def test_verify_pass_and_report(tmp_path, capsys):
    rep = tmp_path / "rep.json"
    code = run_cli("verify", "--family", "one-petal", "--alpha", "pi/4", "--report", str(rep))
    assert code == EXIT_OK
    outlines = capsys.readouterr().out.strip().splitlines()
    assert all(line.startswith("PASS") for line in outlines)
    payload = json.loads(rep.read_text())
    assert payload["all_passed"] is True
    for entry in payload["checks"].values():
        assert set(entry) == {"residual", "tolerance", "pass", "detail"}


def test_verify_failure_exit(capsys):
    code = run_cli("verify", "--family", "two-petal", "--alpha", "pi/8", "--beta", "pi/6")
    assert code == EXIT_VERIFY_FAILED
    out = capsys.readouterr().out
    assert "FAIL" in out and "conformality" in out


def test_verify_tol_override(capsys):
    code = run_cli(
        "verify", "--family", "one-petal", "--alpha", "pi/4",
        "--tol-override", "ode_residual=0.5",
    )
    assert code == EXIT_OK
    for bad in ("bogus=1", "ode_residual=potato", "ode_residual=-1", "odd"):
        assert run_cli(
            "verify", "--family", "one-petal", "--alpha", "pi/4", "--tol-override", bad
        ) == EXIT_USAGE


def test_verify_needs_beta_for_two_petal(capsys):
    code = run_cli("verify", "--family", "two-petal", "--alpha", "pi/8")
    assert code == EXIT_USAGE
    code = run_cli("verify", "--family", "one-petal", "--alpha", "pi/4", "--beta", "pi/8")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# sweep


def test_sweep_explicit_grid(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli(
        "sweep", "--alpha-grid", "pi/8:pi/4:2", "--beta-grid", "pi/16:pi/8:2",
        "--out", str(out),
    )
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "alpha,beta,winding,conformal,degenerate"
    assert len(lines) == 5


def test_sweep_empty_grid_rejected(tmp_path):
    code = run_cli("sweep", "--alpha-grid", "pi/8:pi/4:0", "--out", str(tmp_path / "x.csv"))
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# moments


def circle_csv(tmp_path, n=512):
    path = tmp_path / "circle.csv"
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    rows = ["phi,x,y"]
    for phi in phis:
        rows.append("%.17g,%.17g,%.17g" % (phi, math.cos(phi), math.sin(phi)))
    path.write_text("\n".join(rows) + "\n")
    return path


def test_moments_raw_trace_table(tmp_path):
    rep = tmp_path / "m.json"
    code = run_cli("moments", "--trace", str(circle_csv(tmp_path)), "--report", str(rep))
    assert code == EXIT_OK
    payload = json.loads(rep.read_text())
    assert sorted(payload["moments"]) == ["T2", "T3", "T4", "T5", "T6"]
    t3 = payload["moments"]["T3"]["contour"]
    assert abs(complex(*t3) - (-4.0 / (9.0 * math.pi))) <= 1e-3


def test_moments_family_samples_only(tmp_path):
    rep = tmp_path / "m.json"
    code = run_cli(
        "moments", "--family", "one-petal", "--alpha", "pi/4",
        "--z", "0+0.8i", "--report", str(rep),
    )
    assert code == EXIT_OK
    payload = json.loads(rep.read_text())
    assert "moments" not in payload
    value = complex(*payload["m_plus"][0]["value"])
    assert abs(value - 1.8) <= 1e-3


def test_moments_family_table_is_degenerate(capsys):
    code = run_cli("moments", "--family", "one-petal", "--alpha", "pi/4", "--tk", "4")
    assert code == EXIT_RUNTIME
    assert "ill-defined" in capsys.readouterr().err


def test_moments_usage_errors(tmp_path):
    # nothing requested
    assert run_cli("moments", "--family", "one-petal", "--alpha", "pi/4") == EXIT_USAGE
    # trace and family are mutually exclusive
    assert run_cli(
        "moments", "--trace", str(circle_csv(tmp_path)), "--family", "one-petal",
        "--alpha", "pi/4",
    ) == EXIT_USAGE
    # raw traces carry no map, so no Cauchy samples
    assert run_cli(
        "moments", "--trace", str(circle_csv(tmp_path)), "--z", "0.5i"
    ) == EXIT_USAGE
    assert run_cli("moments") == EXIT_USAGE


# ---------------------------------------------------------------------------
# process-level integration


def test_console_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "petalmap", "verify", "--family", "one-petal",
         "--alpha", "not-an-angle"],
        capture_output=True, text=True,
    )
    assert result.returncode == EXIT_USAGE
    assert "usage error" in result.stderr


def test_unknown_command_is_usage_error(capsys):
    assert run_cli("frobnicate") == EXIT_USAGE
