import csv
import io
import json

import pytest

from hsosc import cli, terms


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_zsweep_two_steps(capsys):
    code, out = run(capsys, "zsweep", "--n", "0", "--z", "0.05:8:2", "--tags", "k0,k1,k2,k3", "--exact")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == list(cli.CURVE_FIELDS)
    for tag in ("k0", "k1", "k2", "k3"):
        series = [r for r in data if r["tag"] == tag]
        assert len(series) == 2
        assert float(series[0]["z"]) < float(series[1]["z"])
    assert float(data[0]["exact"]) == pytest.approx(0.42080497, abs=1e-8)


def test_zsweep_default_range(capsys):
    code, out = run(capsys, "zsweep", "--n", "2", "--tags", "h1,k3")
    data = rows(out)
    assert code == 0 and len(data) == 800
    assert data[0]["exact"] == ""


def test_output_is_deterministic(capsys):
    args = ("select", "--method", "pms", "--orders", "1..3", "--n", "0..2", "--format", "json")
    assert run(capsys, *args) == run(capsys, *args)


def test_float_format():
    assert cli.fmt(0.25) == "2.50000000000e-01"
    assert cli.fmt(3) == 3


def test_json_has_uniform_fields(capsys):
    code, out = run(capsys, "zsweep", "--n", "0,1", "--z", "1:2:3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 2 * 4 * 3
    assert all(list(d) == list(cli.CURVE_FIELDS) for d in data)


def test_select_fac_row(capsys):
    code, out = run(capsys, "select", "--method", "fac", "--orders", "1", "--n", "0", "--g", "0")
    (row,) = rows(out)
    assert code == 0
    assert float(row["z_chosen"]) == pytest.approx(0.25)
    assert row["rule"] == "smallest-root"


def test_select_var1_ratios(capsys):
    code, out = run(capsys, "select", "--method", "var1", "--n", "0,1")
    ratios = [float(r["ratio"]) for r in rows(out)]
    assert ratios == [pytest.approx(1.00076, abs=5e-4), pytest.approx(1.00066, abs=5e-4)]


def test_select_pms_third_order(capsys):
    code, out = run(capsys, "select", "--method", "pms", "--orders", "3", "--n", "0..5")
    ratios = [float(r["ratio"]) for r in rows(out)]
    assert len(ratios) == 6 and all(0.99 <= r <= 1.01 for r in ratios)


def test_select_failure_flags_row(capsys, monkeypatch):
    def boom(*a, **k):
        raise cli.selection.NoRootError("no root")

    monkeypatch.setattr(cli.selection, "fac_select", boom)
    code, out = run(capsys, "select", "--method", "fac", "--orders", "1", "--n", "0")
    assert code == 0 and rows(out)[0]["status"].startswith("error")
    code, _ = run(capsys, "select", "--method", "fac", "--orders", "1", "--n", "0", "--strict")
    assert code == 2


def test_exact_table(capsys):
    code, out = run(capsys, "exact", "--g", "0", "--levels", "6")
    data = rows(out)
    assert code == 0 and [int(r["n"]) for r in data] == list(range(6))
    assert all(r["converged"] == "true" for r in data)


def test_exact_strong_quadratic(capsys):
    code, out = run(capsys, "exact", "--g", "1e6", "--levels", "2")
    e = [float(r["energy"]) for r in rows(out)]
    assert e == [pytest.approx(500, rel=1e-3), pytest.approx(1500, rel=1e-3)]


def test_exact_tight_tolerance(capsys):
    code, out = run(capsys, "exact", "--levels", "1", "--tol", "1e-12")
    (row,) = rows(out)
    assert code == 0 and float(row["error_estimate"]) <= 1e-12


def test_exact_nonconvergence_exit_code(capsys, monkeypatch):
    def stuck(*a, **k):
        raise cli.OracleNotConverged("stuck", (), (), 1024)

    monkeypatch.setattr(cli, "exact_energies", stuck)
    code, _ = run(capsys, "exact", "--levels", "6")
    assert code == 2


def test_spread_table(capsys):
    code, out = run(capsys, "spread", "--n", "0..5")
    data = rows(out)
    assert code == 0 and len(data) == 6
    for r in data:
        assert 0 < float(r["spread_h1"]) < float(r["spread_k3"])


@pytest.mark.parametrize("argv", [
    ["zsweep", "--z", "1:0:3"],
    ["zsweep", "--z", "0.1:1:1"],
    ["zsweep", "--tags", "k9"],
    ["zsweep", "--n", "x"],
    ["select", "--method", "pms", "--orders", "4"],
    ["select", "--method", "nope"],
    ["exact", "--g", "-1"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = cli.main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    assert cli.main(["spread", "--n", "0", "-o", str(path)]) == 0
    assert rows(path.read_text())[0]["n"] == "0"


def test_report_exit_code_tracks_criteria(capsys):
    code, out = run(capsys, "report")
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len(lines) == 13
    assert "1.000757" in out and "1.000660" in out
    assert code == (0 if all(l.startswith("[PASS]") for l in lines) else 3)


def test_report_catches_e3_sign_error(capsys, monkeypatch):
    original = terms.e3
    monkeypatch.setattr(terms, "e3", lambda n, z, x: -original(n, z, x))
    code, out = run(capsys, "report")
    assert code == 3
    failed = [l for l in out.splitlines() if l.startswith("[FAIL]")]
    assert any("brute-force" in l for l in failed)
    assert len(failed) >= 3
