import csv
import io
import json
import math
import subprocess
import sys

import pytest

from catenoid import cli, profile, SpaceForm


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_curve_hyperbolic_matches_graph(capsys):
    code, out, _ = run(capsys, "curve", "--c", "-1", "--n", "3", "--a", "0.2", "--grid", "21")
    assert code == 0
    assert out.startswith("# schema=1\n")
    data = rows(out)
    assert list(data[0]) == ["param", "x", "y"]
    params = [float(r["param"]) for r in data]
    assert params == sorted(params) and len(data) == 41
    sf = SpaceForm(-1.0, 3)
    for r in data[::5]:
        y, x = float(r["y"]), float(r["x"])
        assert abs(x) == pytest.approx(profile.generating_curve_x(sf, 0.2, y), rel=1e-8, abs=1e-12)
        assert math.copysign(1.0, x) == math.copysign(1.0, float(r["param"])) or x == 0.0


def test_curve_euclidean_extent_bound(capsys):
    code, out, _ = run(capsys, "curve", "--c", "0", "--n", "3", "--a", "1")
    assert code == 0
    assert float(rows(out)[-1]["x"]) < math.pi / 2


def test_curve_sphere_closes(capsys):
    code, out, _ = run(capsys, "curve", "--c", "1", "--n", "3", "--a", "0.42231", "--grid", "50")
    assert code == 0
    meta = dict(ln[2:].split("=", 1) for ln in out.splitlines() if ln.startswith("# "))
    assert meta["closure"] == "7/10" and meta["periods"] == "10"
    assert float(meta["closure_gap"]) <= 1e-4
    data = rows(out)
    first, last = data[0], data[-1]
    assert math.hypot(float(first["x"]) - float(last["x"]), float(first["y"]) - float(last["y"])) <= 1e-4
    assert all(math.hypot(float(r["x"]), float(r["y"])) <= 1.0 for r in data)


def test_curve_svg_and_plot(capsys, tmp_path):
    png = tmp_path / "curve.png"
    code, out, _ = run(capsys, "curve", "--c", "-1", "--n", "3", "--a", "0.5", "--format", "svg", "--plot", str(png))
    assert code == 0
    assert out.lstrip().startswith("<?xml") and "<svg" in out
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_curve_json(capsys):
    code, out, _ = run(capsys, "curve", "--c", "0", "--n", "4", "--a", "0.7", "--grid", "5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["schema", "metadata", "columns", "points"]
    assert doc["columns"] == ["param", "x", "y"] and len(doc["points"]) == 9


@pytest.mark.parametrize(
    "args",
    [
        ("curve", "--c", "1", "--n", "3", "--a", "0.7"),
        ("curve", "--c", "-1", "--n", "3", "--a", "-1"),
        ("period", "--n", "3", "--a", "0.9"),
    ],
)
def test_domain_errors_exit_3(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 3
    assert err


@pytest.mark.parametrize(
    "args",
    [
        ("curve", "--n", "3", "--a", "0.5"),
        ("curve", "--c", "-1", "--n", "3"),
        ("period", "--c", "-1", "--n", "3", "--a", "0.3"),
        ("period", "--n", "3"),
        ("period", "--n", "3", "--a", "0.3", "--tol", "0"),
        ("find-closed", "--n", "3", "--p", "1", "--q", "2"),
        ("find-closed", "--n", "3", "--p", "3", "--q", "2"),
        ("verify", "--c", "0", "--n", "2", "--a", "1"),
        ("verify", "--c", "0", "--n", "3", "--format", "csv"),
    ],
)
def test_usage_errors_exit_2(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["curve", "--format", "pdf"])
    assert exc.value.code == 2


def test_period_single_row(capsys):
    code, out, _ = run(capsys, "period", "--n", "3", "--a", "0.42231")
    assert code == 0
    (row,) = rows(out)
    assert list(row) == ["a", "a1", "C", "T", "T_over_pi", "error"]
    assert float(row["T_over_pi"]) == pytest.approx(1.4, abs=5e-4)
    assert float(row["a1"]) == pytest.approx(0.71957, abs=1e-5)
    assert float(row["T"]) == pytest.approx(4.39823, abs=5e-4)
    assert row["error"] == ""


def test_period_sweep(capsys, tmp_path):
    svg = tmp_path / "period.svg"
    code, out, _ = run(
        capsys, "period", "--n", "3", "--a-min", "0.005", "--a-max", "0.57", "--a-steps", "100", "--plot", str(svg)
    )
    assert code == 0
    data = rows(out)
    assert len(data) == 100
    assert all(1 < float(r["T_over_pi"]) < 2 for r in data)
    assert "<svg" in svg.read_text()


def test_period_partial_sweep_exit_0(capsys):
    code, out, _ = run(capsys, "period", "--n", "3", "--a-min", "0.3", "--a-max", "0.7", "--a-steps", "3")
    assert code == 0
    data = rows(out)
    assert data[0]["error"] == "" and data[2]["error"] and data[2]["T"] == ""


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--c", "0", "--n", "3", "--a", "1")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == ["schema", "version", "config", "metrics", "tolerances", "failed", "passed"]
    assert rep["passed"] and rep["failed"] == []
    m = rep["metrics"]
    assert m["simons_residual_analytic"] <= 1e-10
    assert m["simons_fd_order"] >= 1.9


def test_verify_clifford(capsys):
    code, out, _ = run(capsys, "verify", "--c", "1", "--n", "3", "--m", "1")
    assert code == 0
    assert json.loads(out)["metrics"]["clifford_norm_sq"] == 3.0


def test_verify_corrupted_profile(capsys):
    code, out, err = run(capsys, "verify", "--c", "0", "--n", "3", "--a", "1", "--perturb-dx", "1e-3")
    assert code == 4
    rep = json.loads(out)
    assert not rep["passed"]
    assert "first_integral_drift" in rep["failed"]
    assert "first_integral_drift" in err


def test_verify_tight_tolerance_fails(capsys):
    code, out, err = run(capsys, "verify", "--c", "-1", "--n", "3", "--a", "1", "--tol", "1e-30")
    assert code == 4
    assert "simons_residual_analytic" in json.loads(out)["failed"]


def test_find_closed(capsys):
    code, out, _ = run(capsys, "find-closed", "--n", "3", "--p", "7", "--q", "10", "--grid", "200")
    assert code == 0
    (row,) = rows(out)
    assert float(row["a"]) == pytest.approx(0.42231, abs=1e-4)
    assert float(row["T_over_pi"]) == pytest.approx(1.4, abs=1e-8)


def test_find_closed_empty_table(capsys):
    code, out, _ = run(capsys, "find-closed", "--n", "3", "--p", "5", "--q", "7", "--grid", "100", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == [] and doc["metadata"]["p"] == 5


@pytest.mark.parametrize(
    "args",
    [
        ("curve", "--c", "1", "--n", "3", "--a", "0.42231", "--grid", "30"),
        ("curve", "--c", "-1", "--n", "3", "--a", "0.2", "--format", "svg"),
        ("period", "--n", "4", "--a-min", "0.1", "--a-max", "0.45", "--a-steps", "7", "--format", "json"),
        ("verify", "--c", "-1", "--n", "4", "--a", "0.7", "--seed", "7"),
    ],
)
def test_deterministic_output(args, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}"
        assert cli.main([*args, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r\n" not in outs[0]


def test_deterministic_plot_files(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"fig{i}.svg"
        cli.main(["curve", "--c", "0", "--n", "3", "--a", "1", "--out", str(tmp_path / "x.csv"), "--plot", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_number_format():
    assert cli.fmt(1 / 3) == "0.333333333"
    assert cli.fmt(3) == "3"
    assert cli.fmt(1e-20) == "1e-20"
    assert cli.fmt(-0.0 + 0.0) == "0"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "catenoid", "period", "--n", "3", "--a", "0.3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("# schema=1")
